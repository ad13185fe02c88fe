#include "fibspec/sequences.hpp"

#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace fibspec {

namespace {
using BigFloat = boost::multiprecision::cpp_bin_float_100;
}

GenFibSequence::GenFibSequence(int n) : n_(n) {
    if (n < 1) throw DomainError("GenFibSequence: n must be >= 1");
    terms_.assign(static_cast<std::size_t>(n) + 1, BigInt(1));  // f_1 .. f_{n+1} = 1
}

void GenFibSequence::extend(std::size_t k) {
    while (terms_.size() < k) {
        const std::size_t sz = terms_.size();
        terms_.push_back(terms_[sz - 1] + terms_[sz - 1 - static_cast<std::size_t>(n_)]);
    }
}

const BigInt& GenFibSequence::term(std::size_t k) {
    if (k < 1) throw DomainError("term: k must be >= 1");
    extend(k);
    return terms_[k - 1];
}

std::pair<BigInt, BigInt> GenFibSequence::prefix_sum_identity(std::size_t k) {
    if (k < 1) throw DomainError("prefix_sum_identity: k must be >= 1");
    extend(k + static_cast<std::size_t>(n_) + 1);
    BigInt sum = 0;
    for (std::size_t i = 1; i <= k; ++i) sum += terms_[i - 1];
    return {sum, terms_[k + static_cast<std::size_t>(n_)] - 1};
}

BigInt GenFibSequence::norm_of_power(std::size_t k) {
    if (k <= static_cast<std::size_t>(n_))
        throw DomainError("norm_of_power: requires k > n; use the truncation oracle for k <= n");
    return term(k + static_cast<std::size_t>(n_) + 1);
}

double GenFibSequence::ratio_limit_estimate(std::size_t m) {
    if (m < 2) throw DomainError("ratio_limit_estimate: m must be >= 2");
    const BigInt num = term(m + 1);
    const BigInt den = term(m);
    return (BigFloat(num) / BigFloat(den)).convert_to<double>();
}

double GenFibSequence::growth_root_estimate(std::size_t k) {
    const BigInt norm = norm_of_power(k);  // shares the k > n domain check
    return std::exp(log_big(norm) / static_cast<double>(k));
}

BigInt fib_term(int n, std::size_t k) { return GenFibSequence(n).term(k); }

BigInt norm_of_power(int n, std::size_t k) { return GenFibSequence(n).norm_of_power(k); }

double ratio_limit_estimate(int n, std::size_t m) {
    return GenFibSequence(n).ratio_limit_estimate(m);
}

double growth_root_estimate(int n, std::size_t k) {
    return GenFibSequence(n).growth_root_estimate(k);
}

double log_big(const BigInt& v) {
    if (v <= 0) throw DomainError("log_big: argument must be positive");
    return boost::multiprecision::log(BigFloat(v)).convert_to<double>();
}

}  // namespace fibspec
