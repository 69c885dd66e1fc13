#ifndef MCT_RATIONAL_HPP
#define MCT_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace mct {

// Exact rational arithmetic for everything a certificate touches.  Doubles
// cross into Rat exactly (every finite double is a rational), which keeps
// both sides of every compared quantity on identical values.
using Rat = mpq_class;

inline Rat rat_from_double(double d) { return Rat(d); }

inline double rat_to_double(const Rat& q) { return q.get_d(); }

inline std::string rat_num_str(const Rat& q) { return q.get_num().get_str(); }
inline std::string rat_den_str(const Rat& q) { return q.get_den().get_str(); }

inline std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat rat_parse(const std::string& num, const std::string& den) {
    Rat q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return q;
}

}  // namespace mct

#endif
