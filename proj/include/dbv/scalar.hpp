#ifndef DBV_SCALAR_HPP
#define DBV_SCALAR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dbv {

/// Exact rational coefficient. GMP keeps it canonical (lowest terms, positive denominator).
using Scalar = mpq_class;

inline bool is_zero(const Scalar &s) { return sgn(s) == 0; }

/// Canonical "num/den" text; the denominator is always written, including "/1".
inline std::string to_string(const Scalar &s)
{
    return s.get_num().get_str() + "/" + s.get_den().get_str();
}

/// Accepts "p", "p/q" and optional leading sign. Throws std::invalid_argument.
inline Scalar parse_scalar(std::string_view text)
{
    std::string t(text);
    auto valid = [](const std::string &part, bool allow_sign) {
        if (part.empty()) {
            return false;
        }
        std::size_t i = 0;
        if (allow_sign && (part[0] == '-' || part[0] == '+')) {
            i = 1;
        }
        if (i == part.size()) {
            return false;
        }
        for (; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') {
                return false;
            }
        }
        return true;
    };
    const auto slash = t.find('/');
    const std::string num = t.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!valid(num, true) || !valid(den, false)) {
        throw std::invalid_argument("malformed rational '" + t + "'");
    }
    mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
    mpz_class d(den, 10);
    if (d == 0) {
        throw std::invalid_argument("zero denominator in '" + t + "'");
    }
    Scalar q(n, d);
    q.canonicalize();
    return q;
}

inline int sign_power(long e) { return (e % 2 == 0) ? 1 : -1; }

} // namespace dbv

#endif // DBV_SCALAR_HPP
