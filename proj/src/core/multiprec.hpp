#pragma once

#include <complex>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace tanlab {

using Real50 = boost::multiprecision::cpp_bin_float_50;
using Real100 = boost::multiprecision::cpp_bin_float_100;
using Complex50 = boost::multiprecision::cpp_complex_50;
using Complex100 = boost::multiprecision::cpp_complex_100;

template <class C>
std::complex<double> to_double(const C& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace tanlab
