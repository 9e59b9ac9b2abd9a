#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coordmech/rational.hpp"

namespace coordmech {

// Psi_k(A) = k! * sum over non-decreasing index tuples (d_1 <= ... <= d_k)
// of the products a_{d_1} * ... * a_{d_k}; Psi_0(A) = 1, Psi_k(empty) = 0.

// Incremental evaluator. Holds Psi_0..Psi_k of the multiset inserted so far
// and extends it one element at a time via
//   Psi_j(A u {b}) = sum_{t=0..j} j!/(j-t)! * b^t * Psi_{j-t}(A).
// Insertion order does not matter (Psi is symmetric in its elements).
class PsiTable {
public:
    explicit PsiTable(int k) : table_(static_cast<size_t>(check_k(k)) + 1, Rat(0)) {
        table_[0] = 1;
    }

    void insert(const Rat& b) {
        const int k = max_k();
        std::vector<Rat> b_pow(static_cast<size_t>(k) + 1);
        b_pow[0] = 1;
        for (int t = 1; t <= k; ++t) b_pow[t] = b_pow[t - 1] * b;
        std::vector<Rat> next(table_.size());
        next[0] = 1;
        for (int j = 1; j <= k; ++j) {
            Rat sum(0);
            Rat falling(1); // j!/(j-t)! built up as t grows
            for (int t = 0; t <= j; ++t) {
                if (t > 0) falling *= (j - t + 1);
                sum += falling * b_pow[t] * table_[j - t];
            }
            next[j] = std::move(sum);
        }
        table_ = std::move(next);
        ++size_;
    }

    int max_k() const { return static_cast<int>(table_.size()) - 1; }
    int size() const { return size_; }

    // Psi_t of the inserted multiset, 0 <= t <= max_k().
    const Rat& value(int t) const { return table_[static_cast<size_t>(t)]; }

private:
    static int check_k(int k) {
        if (k < 0) throw DomainError("psi requires k >= 0");
        return k;
    }

    std::vector<Rat> table_;
    int size_ = 0;
};

inline Rat psi(int k, const std::vector<Rat>& elements) {
    PsiTable table(k);
    for (const Rat& a : elements) table.insert(a);
    return table.value(k);
}

// Direct enumeration of all non-decreasing index tuples, scaled by k!.
// Test oracle only; refuses oversized inputs.
inline Rat psi_bruteforce(int k, const std::vector<Rat>& elements, int max_k = 8,
                          int max_size = 8) {
    if (k < 0) throw DomainError("psi requires k >= 0");
    if (k > max_k || static_cast<int>(elements.size()) > max_size)
        throw CapExceeded("psi_bruteforce cap exceeded (k <= " + std::to_string(max_k) +
                          ", |A| <= " + std::to_string(max_size) + ")");
    if (k == 0) return Rat(1);
    const int n = static_cast<int>(elements.size());
    Rat sum(0);
    // (first, depth, partial product) over tuples with indices >= first
    auto recurse = [&](auto&& self, int first, int depth, const Rat& product) -> void {
        if (depth == k) {
            sum += product;
            return;
        }
        for (int d = first; d < n; ++d) self(self, d, depth + 1, Rat(product * elements[d]));
    };
    recurse(recurse, 0, 0, Rat(1));
    Rat factorial(1);
    for (int t = 2; t <= k; ++t) factorial *= t;
    return Rat(factorial * sum);
}

} // namespace coordmech
