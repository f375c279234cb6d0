#include <degen/errors.hpp>
#include <degen/polynomial.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace degen
{

PolynomialGerm::PolynomialGerm(std::size_t nvars) : m_nvars(nvars)
{
    if (nvars == 0) {
        throw std::invalid_argument("a germ needs at least one variable");
    }
}

void PolynomialGerm::add_term(const Exponents &e, const Rational &c)
{
    if (e.size() != m_nvars) {
        throw std::invalid_argument("exponent vector length " + std::to_string(e.size()) + " does not match "
                                    + std::to_string(m_nvars) + " variables");
    }
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = m_terms.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            m_terms.erase(it);
        }
    }
}

unsigned PolynomialGerm::total_degree() const
{
    unsigned d = 0;
    for (const auto &[e, c] : m_terms) {
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
    }
    return d;
}

unsigned PolynomialGerm::order() const
{
    if (m_terms.empty()) {
        return 0;
    }
    unsigned d = ~0u;
    for (const auto &[e, c] : m_terms) {
        d = std::min(d, std::accumulate(e.begin(), e.end(), 0u));
    }
    return d;
}

Rational PolynomialGerm::constant_term() const
{
    const auto it = m_terms.find(Exponents(m_nvars, 0));
    return it == m_terms.end() ? Rational(0) : it->second;
}

PolynomialGerm PolynomialGerm::derivative(std::size_t var) const
{
    PolynomialGerm out(m_nvars);
    for (const auto &[e, c] : m_terms) {
        if (e[var] == 0) {
            continue;
        }
        Exponents d = e;
        --d[var];
        out.add_term(d, c * Rational(static_cast<long>(e[var])));
    }
    return out;
}

std::complex<double> PolynomialGerm::evaluate(std::span<const std::complex<double>> z) const
{
    std::complex<double> sum = 0.0;
    for (const auto &[e, c] : m_terms) {
        std::complex<double> term = c.to_double();
        for (std::size_t i = 0; i < m_nvars; ++i) {
            for (unsigned p = 0; p < e[i]; ++p) {
                term *= z[i];
            }
        }
        sum += term;
    }
    return sum;
}

std::string PolynomialGerm::to_string() const
{
    if (m_terms.empty()) {
        return "0";
    }
    std::string out;
    // Highest degree first reads more naturally.
    for (auto it = m_terms.rbegin(); it != m_terms.rend(); ++it) {
        const auto &[e, c] = *it;
        Rational mag = c.sign() < 0 ? -c : c;
        if (out.empty()) {
            if (c.sign() < 0) {
                out += "-";
            }
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        const bool is_const = std::all_of(e.begin(), e.end(), [](unsigned p) { return p == 0; });
        std::string factors;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (!factors.empty()) {
                factors += "*";
            }
            factors += "z" + std::to_string(i);
            if (e[i] > 1) {
                factors += "^" + std::to_string(e[i]);
            }
        }
        if (is_const) {
            out += mag.to_string();
        } else if (mag == Rational(1)) {
            out += factors;
        } else {
            out += mag.to_string() + "*" + factors;
        }
    }
    return out;
}

namespace
{

class GermParser
{
public:
    explicit GermParser(std::string_view text) : m_text(text) {}

    std::vector<std::pair<std::map<std::size_t, unsigned>, Rational>> parse_terms()
    {
        std::vector<std::pair<std::map<std::size_t, unsigned>, Rational>> terms;
        skip_space();
        if (at_end()) {
            fail("empty polynomial");
        }
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = get() == '-' ? -1 : 1;
                skip_space();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            terms.push_back(parse_term(sign));
            skip_space();
        }
        return terms;
    }

private:
    std::pair<std::map<std::size_t, unsigned>, Rational> parse_term(int sign)
    {
        Rational coef(sign);
        std::map<std::size_t, unsigned> powers;
        bool saw_factor = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coef *= parse_rational();
            saw_factor = true;
        }
        while (true) {
            skip_space();
            if (peek() == '*') {
                get();
                skip_space();
            }
            if (peek() != 'z') {
                break;
            }
            get();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                fail("expected variable index after 'z'");
            }
            const std::size_t var = parse_unsigned();
            unsigned power = 1;
            skip_space();
            if (peek() == '^') {
                get();
                skip_space();
                if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                    fail("expected exponent after '^'");
                }
                power = static_cast<unsigned>(parse_unsigned());
            }
            powers[var] += power;
            saw_factor = true;
        }
        if (!saw_factor) {
            fail("expected coefficient or variable");
        }
        return {powers, coef};
    }

    Rational parse_rational()
    {
        const std::size_t begin = m_pos;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            get();
        }
        // A '/' directly followed by a digit continues the coefficient.
        if (peek() == '/' && m_pos + 1 < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos + 1]))) {
            get();
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                get();
            }
        }
        return Rational::parse(m_text.substr(begin, m_pos - begin));
    }

    std::size_t parse_unsigned()
    {
        std::size_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<std::size_t>(get() - '0');
            if (v > 1000000) {
                fail("integer too large");
            }
        }
        return v;
    }

    void skip_space()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
            ++m_pos;
        }
    }
    bool at_end() const
    {
        return m_pos >= m_text.size();
    }
    char peek() const
    {
        return at_end() ? '\0' : m_text[m_pos];
    }
    char get()
    {
        return m_text[m_pos++];
    }
    [[noreturn]] void fail(const std::string &what) const
    {
        throw parse_error("polynomial '" + std::string(m_text) + "': " + what + " at position "
                          + std::to_string(m_pos));
    }

    std::string_view m_text;
    std::size_t m_pos = 0;
};

} // namespace

PolynomialGerm PolynomialGerm::parse(std::string_view text, std::size_t nvars)
{
    const auto terms = GermParser(text).parse_terms();
    std::size_t width = std::max<std::size_t>(nvars, 1);
    for (const auto &[powers, c] : terms) {
        if (!powers.empty()) {
            width = std::max(width, powers.rbegin()->first + 1);
        }
    }
    PolynomialGerm out(width);
    for (const auto &[powers, c] : terms) {
        Exponents e(width, 0);
        for (const auto &[var, p] : powers) {
            e[var] = p;
        }
        out.add_term(e, c);
    }
    return out;
}

} // namespace degen
