#ifndef PRIMESYM_BIGNAT_HPP_
#define PRIMESYM_BIGNAT_HPP_

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace primesym {

using BigNat = boost::multiprecision::cpp_int;

inline std::string to_string(BigNat const& n) {
  return n.str();
}

inline BigNat big_pow(BigNat base, unsigned long exponent) {
  BigNat result = 1;
  while (exponent > 0) {
    if (exponent & 1) {
      result *= base;
    }
    base *= base;
    exponent >>= 1;
  }
  return result;
}

}  // namespace primesym

#endif  // PRIMESYM_BIGNAT_HPP_
