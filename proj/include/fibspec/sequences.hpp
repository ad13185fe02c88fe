#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fibspec/errors.hpp"

namespace fibspec {

using BigInt = boost::multiprecision::cpp_int;

/// Generalized Fibonacci sequence f^{(n)}: n+1 leading ones, then
/// f_k = f_{k-1} + f_{k-n-1}. Terms are exact integers; f^{(1)}_94
/// already overflows 64 bits, so there is no fixed-width mode.
///
/// The term cache grows on demand. Concurrent extension must be
/// serialized externally or use one sequence per thread.
class GenFibSequence {
public:
    explicit GenFibSequence(int n);

    int order() const { return n_; }

    /// f^{(n)}_k, 1-based.
    const BigInt& term(std::size_t k);

    /// (sum_{i=1..k} f_i, f_{k+n+1} - 1); the two are equal for every k.
    std::pair<BigInt, BigInt> prefix_sum_identity(std::size_t k);

    /// ||F_n^k||_1 = f_{k+n+1}, valid for k > n. For k <= n the block form
    /// behind the identity does not apply; use operators::exact_power_norm.
    BigInt norm_of_power(std::size_t k);

    /// f_{m+1}/f_m, rounded once at the end; -> lambda_max(F_n) as m grows.
    double ratio_limit_estimate(std::size_t m);

    /// (f_{k+n+1})^{1/k} evaluated in the log domain; k > n required.
    double growth_root_estimate(std::size_t k);

private:
    void extend(std::size_t k);

    int n_;
    std::vector<BigInt> terms_;  // terms_[i] = f_{i+1}
};

// Stateless conveniences over a scratch sequence.
BigInt fib_term(int n, std::size_t k);
BigInt norm_of_power(int n, std::size_t k);
double ratio_limit_estimate(int n, std::size_t m);
double growth_root_estimate(int n, std::size_t k);

/// log of a positive big integer, exact to double rounding.
double log_big(const BigInt& v);

}  // namespace fibspec
