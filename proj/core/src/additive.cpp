#include "cubenorm/additive.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>

namespace cubenorm {

namespace {

constexpr int kDenseIntegerCap = 20;  // 2^(3n) must fit in int64

__extension__ using U128 = unsigned __int128;

void require_nonempty(const SupportSet& a, const char* op) {
  if (a.empty()) {
    throw DomainError(std::string(op) + ": empty support set");
  }
}

BigInt sum_of_squares(const MultiplicityTable& t) {
  U128 acc = 0;
  for (const auto& [x, c] : t) {
    acc += static_cast<U128>(c) * c;
  }
  BigInt hi = to_big(static_cast<std::uint64_t>(acc >> 64));
  hi <<= 64;
  return hi + to_big(static_cast<std::uint64_t>(acc));
}

// ratio p1/q1 versus p2/q2 for small nonnegative integers.
int compare_ratio(std::uint64_t e1, std::uint64_t s1, std::uint64_t e2, std::uint64_t s2) {
  const U128 lhs = static_cast<U128>(e1) * s2 * s2;
  const U128 rhs = static_cast<U128>(e2) * s1 * s1;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

// Candidate subset given by sorted indices into A.
struct Candidate {
  std::vector<std::size_t> indices;
  std::uint64_t energy = 0;
};

bool better(const Candidate& c, const Candidate& best) {
  const int r = compare_ratio(c.energy, c.indices.size(), best.energy, best.indices.size());
  if (r != 0) {
    return r > 0;
  }
  if (c.indices.size() != best.indices.size()) {
    return c.indices.size() < best.indices.size();
  }
  return c.indices < best.indices;
}

std::uint64_t energy_of_indices(const SupportSet& a, const std::vector<std::size_t>& idx) {
  std::vector<Mask> elems;
  elems.reserve(idx.size());
  for (std::size_t i : idx) {
    elems.push_back(a[i]);
  }
  const BigInt e = additive_energy(SupportSet(a.dimension(), std::move(elems)));
  return e.get_ui();
}

HereditaryResult finish(const SupportSet& a, const Candidate& best, bool exact) {
  std::vector<Mask> elems;
  for (std::size_t i : best.indices) {
    elems.push_back(a[i]);
  }
  const auto size = static_cast<unsigned long>(best.indices.size());
  BigRational ratio(to_big(best.energy), BigInt(size) * size);
  ratio.canonicalize();
  return {SupportSet(a.dimension(), std::move(elems)), ratio, exact};
}

HereditaryResult exhaustive(const SupportSet& a) {
  const std::size_t m = a.size();
  const PairIndex index(a);
  std::vector<std::uint64_t> counts(index.sums().size(), 0);
  const std::uint32_t zero = index.zero_id();

  std::uint64_t members = 0;
  std::uint64_t energy = 0;
  std::uint64_t best_bits = 0;
  std::uint64_t best_energy = 0;
  std::uint64_t best_size = 0;

  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t g = 1; g < total; ++g) {
    const auto i = static_cast<std::size_t>(std::countr_zero(g));
    const std::uint64_t bit = std::uint64_t{1} << i;
    const auto row = index.row(i);
    if ((members & bit) == 0) {
      for (std::uint64_t rest = members; rest != 0; rest &= rest - 1) {
        std::uint64_t& c = counts[row[static_cast<std::size_t>(std::countr_zero(rest))]];
        energy += 4 * c + 4;
        c += 2;
      }
      energy += 2 * counts[zero] + 1;
      counts[zero] += 1;
      members |= bit;
    } else {
      members &= ~bit;
      for (std::uint64_t rest = members; rest != 0; rest &= rest - 1) {
        std::uint64_t& c = counts[row[static_cast<std::size_t>(std::countr_zero(rest))]];
        energy -= 4 * c - 4;
        c -= 2;
      }
      energy -= 2 * counts[zero] - 1;
      counts[zero] -= 1;
    }

    const auto size = static_cast<std::uint64_t>(std::popcount(members));
    bool take = best_size == 0;
    if (!take) {
      const int r = compare_ratio(energy, size, best_energy, best_size);
      if (r > 0) {
        take = true;
      } else if (r == 0) {
        if (size != best_size) {
          take = size < best_size;
        } else {
          const std::uint64_t diff = members ^ best_bits;
          take = (members & diff & (~diff + 1)) != 0;
        }
      }
    }
    if (take) {
      best_bits = members;
      best_energy = energy;
      best_size = size;
    }
  }

  Candidate best;
  for (std::size_t i = 0; i < m; ++i) {
    if ((best_bits >> i) & 1U) {
      best.indices.push_back(i);
    }
  }
  best.energy = best_energy;
  return finish(a, best, true);
}

// Greedy removal: repeatedly drop the element whose removal maximizes the
// energy ratio, recording every intermediate set.
void greedy_candidates(const SupportSet& a, Candidate& best) {
  const std::size_t m = a.size();
  const PairIndex index(a);
  std::vector<std::uint64_t> counts(index.sums().size(), 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      counts[index.id(i, j)] += 1;
    }
  }
  std::uint64_t energy = 0;
  for (std::uint64_t c : counts) {
    energy += c * c;
  }
  std::vector<bool> alive(m, true);
  std::size_t size = m;
  const std::uint32_t zero = index.zero_id();

  while (size > 1) {
    std::size_t pick = m;
    std::uint64_t pick_energy = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!alive[i]) {
        continue;
      }
      const auto row = index.row(i);
      // Removing i: every partner j != i loses the ordered pairs (i,j),(j,i).
      std::int64_t delta = 0;
      for (std::size_t j = 0; j < m; ++j) {
        if (alive[j] && j != i) {
          const auto c = static_cast<std::int64_t>(counts[row[j]]);
          delta += -4 * c + 4;
        }
      }
      delta += -2 * static_cast<std::int64_t>(counts[zero]) + 1;
      const auto e = static_cast<std::uint64_t>(static_cast<std::int64_t>(energy) + delta);
      if (pick == m || compare_ratio(e, size - 1, pick_energy, size - 1) > 0) {
        pick = i;
        pick_energy = e;
      }
    }
    const auto row = index.row(pick);
    alive[pick] = false;
    for (std::size_t j = 0; j < m; ++j) {
      if (alive[j]) {
        counts[row[j]] -= 2;
      }
    }
    counts[zero] -= 1;
    energy = pick_energy;
    --size;

    Candidate c;
    for (std::size_t i = 0; i < m; ++i) {
      if (alive[i]) {
        c.indices.push_back(i);
      }
    }
    c.energy = energy;
    if (better(c, best)) {
      best = std::move(c);
    }
  }
}

}  // namespace

MultiplicityTable::MultiplicityTable(int n, std::vector<std::pair<Mask, std::uint64_t>> entries)
    : n_(n), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
}

std::uint64_t MultiplicityTable::count(Mask x) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair<Mask, std::uint64_t>{x, 0});
  return (it != entries_.end() && it->first == x) ? it->second : 0;
}

MultiplicityTable pair_multiplicities_enumerated(const SupportSet& a) {
  require_nonempty(a, "pair_multiplicities");
  std::vector<Mask> sums;
  sums.reserve(a.size() * a.size());
  for (Mask x : a) {
    for (Mask y : a) {
      sums.push_back(x ^ y);
    }
  }
  std::sort(sums.begin(), sums.end());
  std::vector<std::pair<Mask, std::uint64_t>> entries;
  for (std::size_t i = 0; i < sums.size();) {
    std::size_t j = i;
    while (j < sums.size() && sums[j] == sums[i]) {
      ++j;
    }
    entries.emplace_back(sums[i], j - i);
    i = j;
  }
  return MultiplicityTable(a.dimension(), std::move(entries));
}

MultiplicityTable pair_multiplicities_dense(const SupportSet& a, int dense_cap) {
  require_nonempty(a, "pair_multiplicities");
  const int n = a.dimension();
  require_dense(n, std::min(dense_cap, kDenseIntegerCap), "pair_multiplicities_dense");
  std::vector<std::int64_t> buf(std::size_t{1} << n, 0);
  for (Mask x : a) {
    buf[x] = 1;
  }
  // count = H(H(1_A)^2) / 2^n with H the unnormalized transform.
  fwht_inplace(std::span<std::int64_t>(buf));
  for (auto& v : buf) {
    v *= v;
  }
  fwht_inplace(std::span<std::int64_t>(buf));
  std::vector<std::pair<Mask, std::uint64_t>> entries;
  for (Mask x = 0; x < buf.size(); ++x) {
    const std::int64_t c = buf[x] >> n;
    if (c != 0) {
      entries.emplace_back(x, static_cast<std::uint64_t>(c));
    }
  }
  return MultiplicityTable(n, std::move(entries));
}

MultiplicityTable pair_multiplicities(const SupportSet& a, const AdditiveLimits& limits) {
  require_nonempty(a, "pair_multiplicities");
  const auto sz = static_cast<std::uint64_t>(a.size());
  const bool can_enumerate = sz * sz <= limits.enumeration_limit;
  const bool can_dense = a.dimension() <= std::min({limits.dense_cap, kDenseIntegerCap, kAbsoluteDenseCap});
  if (can_enumerate && can_dense) {
    MultiplicityTable direct = pair_multiplicities_enumerated(a);
    // Dense route only when its 2^n work is comparable to |A|^2.
    if ((std::uint64_t{1} << a.dimension()) <= 4 * sz * sz + 1024) {
      if (pair_multiplicities_dense(a, limits.dense_cap) != direct) {
        throw ConsistencyError("pair multiplicities: enumeration and convolution disagree");
      }
    }
    return direct;
  }
  if (can_enumerate) {
    return pair_multiplicities_enumerated(a);
  }
  if (can_dense) {
    return pair_multiplicities_dense(a, limits.dense_cap);
  }
  throw ResourceLimitError("pair_multiplicities: set too large for enumeration and dimension above dense cap");
}

std::uint64_t m_bound(const MultiplicityTable& table) {
  std::uint64_t best = 0;
  for (const auto& [x, c] : table) {
    if (x != 0) {
      best = std::max(best, c);
    }
  }
  return best + 1;
}

std::uint64_t m_bound(const SupportSet& a, const AdditiveLimits& limits) {
  return m_bound(pair_multiplicities(a, limits));
}

BigInt additive_energy(const MultiplicityTable& table) { return sum_of_squares(table); }

BigInt additive_energy(const SupportSet& a, const AdditiveLimits& limits) {
  return sum_of_squares(pair_multiplicities(a, limits));
}

BigRational energy_ratio(const SupportSet& a, const AdditiveLimits& limits) {
  const BigInt e = additive_energy(a, limits);
  const BigInt sz = to_big(a.size());
  return make_rational(e, sz * sz);
}

SupportSet sumset(const SupportSet& b, const SupportSet& c) {
  if (b.dimension() != c.dimension()) {
    throw DomainError("sumset: dimension mismatch");
  }
  std::vector<Mask> out;
  out.reserve(b.size() * c.size());
  for (Mask x : b) {
    for (Mask y : c) {
      out.push_back(x ^ y);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return SupportSet(b.dimension(), std::move(out));
}

PairIndex::PairIndex(const SupportSet& a) : m_(a.size()) {
  if (m_ > kMaxSupport) {
    throw ResourceLimitError("pair index: support larger than " + std::to_string(kMaxSupport));
  }
  sums_.reserve(m_ * m_);
  for (Mask x : a) {
    for (Mask y : a) {
      sums_.push_back(x ^ y);
    }
  }
  std::sort(sums_.begin(), sums_.end());
  sums_.erase(std::unique(sums_.begin(), sums_.end()), sums_.end());
  ids_.resize(m_ * m_);
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < m_; ++j) {
      const Mask s = a[i] ^ a[j];
      ids_[i * m_ + j] = static_cast<std::uint32_t>(std::lower_bound(sums_.begin(), sums_.end(), s) - sums_.begin());
    }
  }
  zero_id_ = 0;  // 0 is the smallest sum whenever A is nonempty
}

HereditaryResult hereditary_energy(const SupportSet& a, int exact_limit,
                                   const std::optional<std::vector<double>>& certificate) {
  require_nonempty(a, "hereditary_energy");
  if (exact_limit > 30) {
    throw ResourceLimitError("hereditary_energy: exhaustive limit above 30 elements");
  }
  if (static_cast<int>(a.size()) <= exact_limit) {
    return exhaustive(a);
  }

  Candidate best;
  best.indices.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    best.indices[i] = i;
  }
  best.energy = additive_energy(a).get_ui();

  if (certificate) {
    std::vector<double> mags(certificate->size());
    std::transform(certificate->begin(), certificate->end(), mags.begin(), [](double v) { return std::abs(v); });
    const SpectrumVector y = SpectrumVector(a, std::move(mags)).normalized();
    const LevelSetDecomposition levels = dyadic_level_sets(y);
    for (const auto& level : levels.levels) {
      Candidate c;
      for (Mask m : level.members) {
        c.indices.push_back(*a.index_of(m));
      }
      c.energy = energy_of_indices(a, c.indices);
      if (better(c, best)) {
        best = std::move(c);
      }
    }
  }

  if (a.size() <= PairIndex::kMaxSupport / 2) {
    greedy_candidates(a, best);
  }
  return finish(a, best, false);
}

int level_cutoff(std::size_t support_size) {
  // ceil(log2(m) / 2) is the least c with 4^c >= m.
  int c = 0;
  while ((std::uint64_t{1} << (2 * c)) < support_size) {
    ++c;
  }
  return c + 2;
}

LevelSetDecomposition dyadic_level_sets(const SpectrumVector& y, double norm_tol) {
  if (y.support.empty()) {
    throw DomainError("dyadic_level_sets: empty support");
  }
  if (!y.is_normalized(norm_tol)) {
    throw DomainError("dyadic_level_sets: vector is not normalized");
  }
  for (double v : y.coords) {
    if (v < 0.0) {
      throw DomainError("dyadic_level_sets: negative coordinate; flip signs first");
    }
  }
  LevelSetDecomposition out;
  out.cutoff = level_cutoff(y.support.size());
  std::vector<std::vector<Mask>> buckets(static_cast<std::size_t>(out.cutoff) + 1);
  std::vector<Mask> tail;
  for (std::size_t idx = 0; idx < y.coords.size(); ++idx) {
    const double v = y.coords[idx];
    if (v <= 0.0) {
      continue;
    }
    // Least i >= 1 with 2^-i < v; powers of two are exact so the test is too.
    int i = 1;
    while (i <= out.cutoff && !(std::ldexp(1.0, -i) < v)) {
      ++i;
    }
    if (i > out.cutoff) {
      tail.push_back(y.support[idx]);
    } else {
      buckets[static_cast<std::size_t>(i)].push_back(y.support[idx]);
    }
  }
  const int n = y.support.dimension();
  for (int i = 1; i <= out.cutoff; ++i) {
    auto& b = buckets[static_cast<std::size_t>(i)];
    if (!b.empty()) {
      out.levels.push_back({i, SupportSet(n, std::move(b))});
    }
  }
  out.tail = SupportSet(n, std::move(tail));
  return out;
}

}  // namespace cubenorm
