#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace seventerm {

// All arithmetic in this library is exact; Int never overflows.
using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int int_gcd(Int a, Int b) {
    a = int_abs(a);
    b = int_abs(b);
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

// Floor division; the C++ '/' truncates toward zero.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Representative of a mod m in [0, m); m > 0.
inline Int pos_mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

std::string to_string(const Int& a);

} // namespace seventerm
