#include <degen/errors.hpp>
#include <degen/milnor.hpp>

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include <gmpxx.h>

namespace degen
{

std::string to_string(MilnorMethod m)
{
    return m == MilnorMethod::quotient_dimension ? "quotient-dimension" : "quasi-homogeneous";
}

std::vector<PolynomialGerm> jacobian_ideal(const PolynomialGerm &f)
{
    std::vector<PolynomialGerm> out;
    out.reserve(f.nvars());
    for (std::size_t i = 0; i < f.nvars(); ++i) {
        out.push_back(f.derivative(i));
    }
    return out;
}

int default_degree_bound(const PolynomialGerm &f)
{
    const int n = static_cast<int>(f.nvars()) - 1;
    const int d = static_cast<int>(f.total_degree());
    // n (d - 1) + 2 covers the tested germs; (n + 1)(d - 2) + 2 is the socle degree of a
    // homogeneous isolated singularity plus two, needed when d is large compared to n.
    return std::max({n * (d - 1) + 2, (n + 1) * (d - 2) + 2, 2});
}

namespace
{

using SparseRow = std::vector<std::pair<std::size_t, mpz_class>>;

// Monomials of total degree < max_degree, indexed in graded order.
class MonomialIndex
{
public:
    MonomialIndex(std::size_t nvars, int max_degree)
    {
        Exponents e(nvars, 0);
        for (int d = 0; d < max_degree; ++d) {
            enumerate(e, 0, static_cast<unsigned>(d));
        }
    }

    std::size_t size() const noexcept
    {
        return m_list.size();
    }
    const std::vector<Exponents> &list() const noexcept
    {
        return m_list;
    }
    // Index of e, or size() if deg(e) is beyond the truncation.
    std::size_t find(const Exponents &e) const
    {
        const auto it = m_index.find(e);
        return it == m_index.end() ? m_list.size() : it->second;
    }

private:
    void enumerate(Exponents &e, std::size_t var, unsigned remaining)
    {
        if (var + 1 == e.size()) {
            e[var] = remaining;
            m_index.emplace(e, m_list.size());
            m_list.push_back(e);
            e[var] = 0;
            return;
        }
        for (unsigned p = remaining + 1; p-- > 0;) {
            e[var] = p;
            enumerate(e, var + 1, remaining - p);
        }
        e[var] = 0;
    }

    std::vector<Exponents> m_list;
    std::map<Exponents, std::size_t> m_index;
};

// Scales a rational polynomial to a primitive integer one (same ideal generator up to a unit).
std::vector<std::pair<Exponents, mpz_class>> integer_terms(const PolynomialGerm &g)
{
    mpz_class lcm = 1;
    for (const auto &[e, c] : g.terms()) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.denominator().get_mpz_t());
    }
    std::vector<std::pair<Exponents, mpz_class>> out;
    for (const auto &[e, c] : g.terms()) {
        mpz_class v = c.numerator() * (lcm / c.denominator());
        out.emplace_back(e, std::move(v));
    }
    return out;
}

void make_primitive(SparseRow &row)
{
    mpz_class g = 0;
    for (const auto &[col, v] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) {
            return;
        }
    }
    if (g > 1) {
        for (auto &[col, v] : row) {
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        }
    }
}

// row <- a * row - b * pivot, where a = pivot lead, b = row lead; cancels the shared lead column.
SparseRow eliminate(const SparseRow &row, const SparseRow &pivot)
{
    const mpz_class a = pivot.front().second;
    const mpz_class b = row.front().second;
    SparseRow out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.emplace_back(row[i].first, a * row[i].second);
            ++i;
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            out.emplace_back(pivot[j].first, -b * pivot[j].second);
            ++j;
        } else {
            mpz_class v = a * row[i].second - b * pivot[j].second;
            if (v != 0) {
                out.emplace_back(row[i].first, std::move(v));
            }
            ++i;
            ++j;
        }
    }
    make_primitive(out);
    return out;
}

// Fraction-free row echelon form over the integers, built one row at a time.
class Echelon
{
public:
    void insert(SparseRow row)
    {
        while (!row.empty()) {
            const auto it = m_pivots.find(row.front().first);
            if (it == m_pivots.end()) {
                make_primitive(row);
                const std::size_t lead = row.front().first;
                m_pivots.emplace(lead, std::move(row));
                return;
            }
            row = eliminate(row, it->second);
        }
    }
    std::size_t rank() const noexcept
    {
        return m_pivots.size();
    }

private:
    std::map<std::size_t, SparseRow> m_pivots;
};

} // namespace

std::size_t truncated_quotient_dimension(const std::vector<PolynomialGerm> &generators, std::size_t nvars, int degree)
{
    if (degree <= 0) {
        return 0;
    }
    const MonomialIndex monomials(nvars, degree);
    Echelon echelon;
    for (const auto &g : generators) {
        if (g.is_zero()) {
            continue;
        }
        const auto terms = integer_terms(g);
        const int g_order = static_cast<int>(g.order());
        for (const auto &m : monomials.list()) {
            const int m_deg = std::accumulate(m.begin(), m.end(), 0);
            if (m_deg + g_order >= degree) {
                continue;
            }
            SparseRow row;
            for (const auto &[e, c] : terms) {
                Exponents prod(nvars);
                for (std::size_t i = 0; i < nvars; ++i) {
                    prod[i] = e[i] + m[i];
                }
                const std::size_t col = monomials.find(prod);
                if (col < monomials.size()) {
                    row.emplace_back(col, c);
                }
            }
            std::sort(row.begin(), row.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
            echelon.insert(std::move(row));
        }
    }
    return monomials.size() - echelon.rank();
}

MilnorResult milnor_number(const PolynomialGerm &f, std::optional<int> degree_bound)
{
    MilnorResult result;
    result.method = MilnorMethod::quotient_dimension;

    const auto jac = jacobian_ideal(f);
    const bool critical = f.constant_term().is_zero()
                          && std::all_of(jac.begin(), jac.end(), [](const PolynomialGerm &g) {
                                 return g.constant_term().is_zero();
                             });
    if (!critical) {
        result.mu = 0;
        return result;
    }

    const int bound = degree_bound.value_or(default_degree_bound(f));
    for (int d = 1; d <= bound; ++d) {
        result.dimension_sequence.push_back(truncated_quotient_dimension(jac, f.nvars(), d));
        const auto &seq = result.dimension_sequence;
        if (seq.size() >= 2 && seq[seq.size() - 1] == seq[seq.size() - 2]) {
            result.mu = seq.back();
            result.degree_bound_used = d;
            return result;
        }
    }
    result.degree_bound_used = bound;
    return result;
}

std::size_t milnor_quasihomogeneous(std::span<const Rational> weights, const Rational &degree)
{
    Rational product(1);
    for (const auto &w : weights) {
        if (w.sign() <= 0) {
            throw std::invalid_argument("weights must be positive");
        }
        const Rational ratio = degree / w;
        if (ratio <= Rational(1)) {
            throw std::invalid_argument("quasi-homogeneous formula needs d/w_i > 1 for every weight");
        }
        product *= ratio - Rational(1);
    }
    if (!product.is_integer()) {
        throw not_integer("quasi-homogeneous Milnor count " + product.to_string() + " is not an integer");
    }
    return product.numerator().get_ui();
}

std::optional<std::vector<Rational>> quasihomogeneous_weights(const PolynomialGerm &f)
{
    const std::size_t n = f.nvars();
    // Augmented system <e, w> = 1, one row per term.
    std::vector<std::vector<Rational>> rows;
    for (const auto &[e, c] : f.terms()) {
        std::vector<Rational> row(n + 1);
        for (std::size_t i = 0; i < n; ++i) {
            row[i] = Rational(static_cast<long>(e[i]));
        }
        row[n] = Rational(1);
        rows.push_back(std::move(row));
    }
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                               [col](const auto &r) { return !r[col].is_zero(); });
        if (it == rows.end()) {
            continue;
        }
        std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(rank), it);
        auto &p = rows[rank];
        const Rational inv = Rational(1) / p[col];
        for (auto &v : p) {
            v *= inv;
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col].is_zero()) {
                continue;
            }
            const Rational factor = rows[r][col];
            for (std::size_t k = 0; k <= n; ++k) {
                rows[r][k] -= factor * p[k];
            }
        }
        pivot_cols.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < rows.size(); ++r) {
        if (!rows[r][n].is_zero()) {
            return std::nullopt; // inconsistent
        }
    }
    if (rank < n) {
        return std::nullopt; // weights not determined
    }
    std::vector<Rational> w(n);
    for (std::size_t r = 0; r < rank; ++r) {
        w[pivot_cols[r]] = rows[r][n];
    }
    return w;
}

std::size_t milnor_sum(std::span<const PolynomialGerm> germs)
{
    std::vector<std::future<MilnorResult>> jobs;
    jobs.reserve(germs.size());
    for (const auto &g : germs) {
        jobs.push_back(std::async(std::launch::async, [&g] { return milnor_number(g); }));
    }
    std::size_t total = 0;
    for (auto &job : jobs) {
        const MilnorResult r = job.get();
        if (r.is_infinite()) {
            throw bound_exceeded(r.dimension_sequence.empty() ? 0 : r.dimension_sequence.back(),
                                 r.degree_bound_used);
        }
        total += *r.mu;
    }
    return total;
}

} // namespace degen
