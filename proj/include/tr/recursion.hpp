#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tr/curve.hpp"

namespace tr {

// One pole slot of a correlator: (ramification point index, pole order).
using Slot = std::pair<int, long>;
using Key = std::vector<Slot>;  // sorted multiset of slots, one per variable

std::string key_str(const Key& k);

// Symmetric n-variable form stored as principal parts at ramification
// points: coefficient c applies to every distinct arrangement of the key's
// slots over the variables, each slot (a,k) contributing t^-k in the local
// coordinate at ramification point a.
template <class F>
struct MeroForm {
  long g = 0, n = 0;
  std::map<Key, F> c;
};

// test hook: negates the recursion kernel, which flips every stable
// correlator's sign without breaking symmetry or pole bounds
bool& kernel_sign_flip();

template <class F>
class OmegaTable {
 public:
  explicit OmegaTable(SpectralCurve<F>& curve) : cur_(curve) {}

  // Eynard-Orantin correlator; memoized. (0,1) and (0,2) raise UnstablePair.
  const MeroForm<F>& omega(long g, long n);

  // F_g for g >= 2 from the g,1 correlator and the potential's primitive
  F free_energy(long g);

  SpectralCurve<F>& curve() { return cur_; }

  // extra expansion margin on top of the default working order
  void set_extra_order(long k) { extra_ = k < 0 ? 0 : k; }

  static long pole_bound(long g, long n) { return 2 * (3 * g - 3 + n) + 2; }

 private:
  SpectralCurve<F>& cur_;
  long extra_ = 0;
  std::map<std::pair<long, long>, MeroForm<F>> memo_;

  MeroForm<F> compute(long g, long n);
  MeroForm<F> compute_at(long g, long n, long K);
};

}  // namespace tr
