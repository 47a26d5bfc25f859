#ifndef DBV_LANDAU_GINZBURG_HPP
#define DBV_LANDAU_GINZBURG_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algebra.hpp"

namespace dbv {

/// Univariate polynomial over the rationals, dense, no trailing zeros.
class Polynomial
{
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Polynomial from_map(const std::map<int, Scalar> &m)
    {
        std::vector<Scalar> c;
        for (const auto &[e, v] : m) {
            if (e < 0) {
                throw std::invalid_argument("negative exponent in polynomial");
            }
            if (c.size() <= static_cast<std::size_t>(e)) {
                c.resize(static_cast<std::size_t>(e) + 1);
            }
            c[static_cast<std::size_t>(e)] += v;
        }
        return Polynomial(std::move(c));
    }
    static Polynomial monomial(int k, const Scalar &a = 1)
    {
        std::vector<Scalar> c(static_cast<std::size_t>(k) + 1);
        c.back() = a;
        return Polynomial(std::move(c));
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Scalar coeff(int k) const
    {
        return (k < 0 || k > degree()) ? Scalar(0) : c_[static_cast<std::size_t>(k)];
    }
    const std::vector<Scalar> &coeffs() const { return c_; }

    Polynomial derivative() const
    {
        std::vector<Scalar> d;
        for (std::size_t k = 1; k < c_.size(); ++k) {
            d.push_back(c_[k] * static_cast<long>(k));
        }
        return Polynomial(std::move(d));
    }

    friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                c[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return Polynomial(std::move(c));
    }
    friend Polynomial operator+(const Polynomial &a, const Polynomial &b)
    {
        std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        }
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial &a, const Polynomial &b)
    {
        std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
        }
        return Polynomial(std::move(c));
    }
    friend bool operator==(const Polynomial &, const Polynomial &) = default;

    /// Euclidean division: *this = q * d + r with deg r < deg d.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial &d) const
    {
        if (d.is_zero()) {
            throw std::domain_error("polynomial division by zero");
        }
        std::vector<Scalar> r = c_;
        const int dd = d.degree();
        std::vector<Scalar> q(static_cast<std::size_t>(std::max(0, degree() - dd + 1)));
        const Scalar lead = d.c_.back();
        for (int k = degree(); k >= dd; --k) {
            const Scalar f = r[static_cast<std::size_t>(k)] / lead;
            if (dbv::is_zero(f)) {
                continue;
            }
            q[static_cast<std::size_t>(k - dd)] = f;
            for (int i = 0; i <= dd; ++i) {
                r[static_cast<std::size_t>(k - dd + i)] -= f * d.c_[static_cast<std::size_t>(i)];
            }
        }
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }

    /// e.g. "x^3 - 1/2*x + 2"
    std::string to_string() const
    {
        if (is_zero()) {
            return "0";
        }
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const Scalar &a = c_[static_cast<std::size_t>(k)];
            if (dbv::is_zero(a)) {
                continue;
            }
            Scalar mag = abs(a);
            std::string term;
            if (k == 0 || mag != 1) {
                term = mag.get_str();
            }
            if (k > 0) {
                term += (term.empty() ? "" : "*") + std::string("x") + (k > 1 ? "^" + std::to_string(k) : "");
            }
            if (out.empty()) {
                out = (sgn(a) < 0 ? "-" : "") + term;
            } else {
                out += (sgn(a) < 0 ? " - " : " + ") + term;
            }
        }
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && dbv::is_zero(c_.back())) {
            c_.pop_back();
        }
    }
    std::vector<Scalar> c_;
};

/// Parses polynomials in x such as "x^3", "x^3 - 2x + 1/2", "3/2*x^2+x".
inline Polynomial parse_polynomial(std::string_view text)
{
    std::string s;
    for (char ch : text) {
        if (ch != ' ' && ch != '\t') {
            s += ch;
        }
    }
    if (s.empty()) {
        throw std::invalid_argument("empty polynomial");
    }
    std::map<int, Scalar> terms;
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') {
            ++end;
        }
        std::string term = s.substr(pos, end - pos);
        if (term.empty()) {
            throw std::invalid_argument("malformed polynomial '" + std::string(text) + "'");
        }
        Scalar coeff = 1;
        int exponent = 0;
        const auto xpos = term.find('x');
        if (xpos == std::string::npos) {
            coeff = parse_scalar(term);
        } else {
            std::string c = term.substr(0, xpos);
            if (!c.empty() && c.back() == '*') {
                c.pop_back();
            }
            if (!c.empty()) {
                coeff = parse_scalar(c);
            }
            std::string e = term.substr(xpos + 1);
            if (e.empty()) {
                exponent = 1;
            } else if (e[0] == '^' && e.size() > 1 && e.find_first_not_of("0123456789", 1) == std::string::npos) {
                exponent = std::stoi(e.substr(1));
            } else {
                throw std::invalid_argument("malformed term '" + term + "'");
            }
        }
        terms[exponent] += sign * coeff;
        pos = end;
    }
    return Polynomial::from_map(terms);
}

/// The Landau-Ginzburg dBV algebra V = k[x] (x) Lambda[eta], deg x = 0, deg eta = -1,
/// Delta = d^2/dx deta and Q = [W, -], i.e. Q(f + g eta) = W'(x) g.
///
/// Basis index 2k is x^k and 2k+1 is x^k eta.
class LandauGinzburgDBV
{
public:
    LandauGinzburgDBV() : LandauGinzburgDBV(Polynomial::monomial(3)) {}
    explicit LandauGinzburgDBV(Polynomial potential) : w_(std::move(potential)), dw_(w_.derivative())
    {
        if (w_.degree() < 2) {
            throw std::invalid_argument("Landau-Ginzburg potential must have degree >= 2");
        }
    }

    const Polynomial &potential() const { return w_; }
    const Polynomial &potential_derivative() const { return dw_; }

    static BasisIndex x_power(int k) { return 2 * static_cast<BasisIndex>(k); }
    static BasisIndex x_power_eta(int k) { return 2 * static_cast<BasisIndex>(k) + 1; }
    static int x_exponent(BasisIndex i) { return static_cast<int>(i / 2); }
    static bool has_eta(BasisIndex i) { return i % 2 != 0; }

    BasisIndex unit() const { return x_power(0); }
    int degree(BasisIndex i) const { return has_eta(i) ? -1 : 0; }
    bool finite() const { return false; }
    /// Q and Delta both map k[x]eta to k[x], so degree shifts hold only mod 2.
    bool integer_graded() const { return false; }

    std::string name(BasisIndex i) const
    {
        const int k = x_exponent(i);
        std::string xs = k == 0 ? "" : (k == 1 ? "x" : "x^" + std::to_string(k));
        if (!has_eta(i)) {
            return xs.empty() ? "1" : xs;
        }
        return xs.empty() ? "eta" : xs + "*eta";
    }

    std::optional<BasisIndex> find(std::string_view s) const
    {
        std::string t(s);
        bool eta = false;
        if (t == "eta") {
            return x_power_eta(0);
        }
        const std::string suffix = "*eta";
        if (t.size() > suffix.size() && t.compare(t.size() - suffix.size(), suffix.size(), suffix) == 0) {
            eta = true;
            t.resize(t.size() - suffix.size());
        }
        int k = -1;
        if (t == "1" && !eta) {
            k = 0;
        } else if (t == "x") {
            k = 1;
        } else if (t.size() > 2 && t.compare(0, 2, "x^") == 0 &&
                   t.find_first_not_of("0123456789", 2) == std::string::npos) {
            k = std::stoi(t.substr(2));
            if (k < 2) {
                return std::nullopt;
            }
        }
        if (k < 0) {
            return std::nullopt;
        }
        return eta ? x_power_eta(k) : x_power(k);
    }

    Vector multiply(BasisIndex i, BasisIndex j) const
    {
        if (has_eta(i) && has_eta(j)) {
            return {};
        }
        const int k = x_exponent(i) + x_exponent(j);
        return Vector::basis(has_eta(i) || has_eta(j) ? x_power_eta(k) : x_power(k));
    }

    Vector apply_q(BasisIndex i) const
    {
        if (!has_eta(i)) {
            return {};
        }
        return from_polynomial(dw_ * Polynomial::monomial(x_exponent(i)), false);
    }

    Vector apply_delta(BasisIndex i) const
    {
        const int k = x_exponent(i);
        if (!has_eta(i) || k == 0) {
            return {};
        }
        return Vector::basis(x_power(k - 1), Scalar(k));
    }

    /// x^k and x^k eta for k <= x_degree, restricted to the degree window.
    std::vector<BasisIndex> window_basis(const Window &w) const
    {
        std::vector<BasisIndex> out;
        for (int k = 0; k <= w.x_degree; ++k) {
            if (w.contains_degree(0)) {
                out.push_back(x_power(k));
            }
            if (w.contains_degree(-1)) {
                out.push_back(x_power_eta(k));
            }
        }
        return out;
    }

    int min_degree() const { return -1; }
    int max_degree() const { return 0; }

    /// f + g eta as a vector.
    static Vector from_polynomials(const Polynomial &f, const Polynomial &g)
    {
        return from_polynomial(f, false) + from_polynomial(g, true);
    }
    static Vector from_polynomial(const Polynomial &p, bool eta)
    {
        Vector v;
        for (int k = 0; k <= p.degree(); ++k) {
            v.add(eta ? x_power_eta(k) : x_power(k), p.coeff(k));
        }
        return v;
    }
    /// The f and g of v = f + g eta.
    static std::pair<Polynomial, Polynomial> to_polynomials(const Vector &v)
    {
        std::map<int, Scalar> f;
        std::map<int, Scalar> g;
        for (const auto &[i, c] : v) {
            (has_eta(i) ? g : f)[x_exponent(i)] += c;
        }
        return {Polynomial::from_map(f), Polynomial::from_map(g)};
    }

private:
    Polynomial w_;
    Polynomial dw_;
};

} // namespace dbv

#endif // DBV_LANDAU_GINZBURG_HPP
