#pragma once

// Additive structure of subsets of {0,1}^n under XOR: representation counts
// |M_x| = #{(a,b) in A x A : a + b = x}, the multiplicity bound m(A), additive
// energy E(A) = sum_x |M_x|^2, sumsets, hereditary energy, and the dyadic
// level-set partition of a nonnegative unit coefficient vector.

#include "cubenorm/cube.hpp"
#include "cubenorm/exact.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace cubenorm {

class MultiplicityTable {
 public:
  MultiplicityTable() = default;
  /// Entries sorted by mask; every count positive.
  MultiplicityTable(int n, std::vector<std::pair<Mask, std::uint64_t>> entries);

  int dimension() const { return n_; }
  std::size_t size() const { return entries_.size(); }
  std::uint64_t count(Mask x) const;
  std::span<const std::pair<Mask, std::uint64_t>> entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const MultiplicityTable&, const MultiplicityTable&) = default;

 private:
  int n_ = 0;
  std::vector<std::pair<Mask, std::uint64_t>> entries_;
};

struct AdditiveLimits {
  int dense_cap = kDefaultDenseCap;
  /// Pair enumeration is used while |A|^2 stays below this.
  std::uint64_t enumeration_limit = std::uint64_t{1} << 28;
};

/// Exact counts. Uses direct pair enumeration and/or an integer XOR
/// self-convolution of the indicator; when both apply they are cross-checked
/// and a mismatch throws ConsistencyError.
MultiplicityTable pair_multiplicities(const SupportSet& a, const AdditiveLimits& limits = {});
MultiplicityTable pair_multiplicities_enumerated(const SupportSet& a);
/// Dense integer Walsh-Hadamard route; n <= min(dense_cap, 20).
MultiplicityTable pair_multiplicities_dense(const SupportSet& a, int dense_cap = kDefaultDenseCap);

/// 1 + max over nonzero x of |M_x|; 1 for a singleton.
std::uint64_t m_bound(const SupportSet& a, const AdditiveLimits& limits = {});
std::uint64_t m_bound(const MultiplicityTable& table);

BigInt additive_energy(const SupportSet& a, const AdditiveLimits& limits = {});
BigInt additive_energy(const MultiplicityTable& table);
/// E(A) / |A|^2.
BigRational energy_ratio(const SupportSet& a, const AdditiveLimits& limits = {});

SupportSet sumset(const SupportSet& b, const SupportSet& c);

/// Dense index of pairwise sums: sums() lists the distinct values a_i ^ a_j in
/// increasing order and id(i, j) locates a_i ^ a_j in that list.
class PairIndex {
 public:
  static constexpr std::size_t kMaxSupport = 2048;

  explicit PairIndex(const SupportSet& a);

  std::size_t support_size() const { return m_; }
  std::span<const Mask> sums() const { return sums_; }
  std::uint32_t id(std::size_t i, std::size_t j) const { return ids_[i * m_ + j]; }
  std::span<const std::uint32_t> row(std::size_t i) const { return {ids_.data() + i * m_, m_}; }
  std::uint32_t zero_id() const { return zero_id_; }

 private:
  std::size_t m_ = 0;
  std::vector<Mask> sums_;
  std::vector<std::uint32_t> ids_;
  std::uint32_t zero_id_ = 0;
};

struct HereditaryResult {
  SupportSet best;
  BigRational ratio;
  bool exact = false;
};

/// max over nonempty B of E(B)/|B|^2. Exhaustive when |A| <= exact_limit;
/// otherwise best of the whole set, the dyadic level sets of the optional
/// certificate, and a greedy removal sequence (exact flag cleared). Ties go to
/// smaller |B|, then to the lexicographically smaller element sequence.
HereditaryResult hereditary_energy(const SupportSet& a, int exact_limit = 20,
                                   const std::optional<std::vector<double>>& certificate = std::nullopt);

struct LevelSetDecomposition {
  struct Level {
    int index = 0;  // i, with 2^-i < y_a <= 2^-(i-1)
    SupportSet members;
  };
  std::vector<Level> levels;  // only nonempty levels, increasing index
  int cutoff = 0;             // N = ceil(log2|A| / 2) + 2
  SupportSet tail;            // 0 < y_a <= 2^-N
};

/// Requires a unit vector with nonnegative coordinates.
LevelSetDecomposition dyadic_level_sets(const SpectrumVector& y, double norm_tol = 1e-12);

/// Level cutoff N for a support of the given size.
int level_cutoff(std::size_t support_size);

}  // namespace cubenorm
