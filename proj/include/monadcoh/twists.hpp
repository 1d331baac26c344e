#pragma once

// A finite multiset of integers a_j encoding the twist sum ⊕_j O(a_j),
// kept sorted non-increasing so structural equality is canonical.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace monadcoh {

class TwistSum {
 public:
  TwistSum() = default;
  explicit TwistSum(std::vector<int> twists) : t_(std::move(twists)) {
    std::sort(t_.begin(), t_.end(), std::greater<int>());
  }

  int rank() const { return (int)t_.size(); }
  bool empty() const { return t_.empty(); }
  int at(int i) const { return t_[(std::size_t)i]; }
  const std::vector<int>& list() const { return t_; }

  int max() const { return t_.front(); }  // requires nonempty
  int min() const { return t_.back(); }

  TwistSum twisted(int s) const {
    std::vector<int> v = t_;
    for (int& x : v) x += s;
    TwistSum r;
    r.t_ = std::move(v);  // order preserved
    return r;
  }

  // Dual twists: negate and reverse, staying non-increasing.
  TwistSum negated() const {
    std::vector<int> v(t_.rbegin(), t_.rend());
    for (int& x : v) x = -x;
    TwistSum r;
    r.t_ = std::move(v);
    return r;
  }

  // Stable merge of two canonical lists; perm[i] gives the position in the
  // concatenation (a then b) of the i-th merged twist, for permuting the
  // rows/columns of block maps consistently.
  static std::pair<TwistSum, std::vector<int>> merge(const TwistSum& a,
                                                     const TwistSum& b) {
    TwistSum out;
    std::vector<int> perm;
    out.t_.reserve(a.t_.size() + b.t_.size());
    perm.reserve(a.t_.size() + b.t_.size());
    std::size_t i = 0, j = 0;
    while (i < a.t_.size() || j < b.t_.size()) {
      bool from_a = j == b.t_.size() ||
                    (i < a.t_.size() && a.t_[i] >= b.t_[j]);
      if (from_a) {
        out.t_.push_back(a.t_[i]);
        perm.push_back((int)i);
        ++i;
      } else {
        out.t_.push_back(b.t_[j]);
        perm.push_back((int)(a.t_.size() + j));
        ++j;
      }
    }
    return {out, perm};
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(t_[i]);
    }
    return s + "}";
  }

  bool operator==(const TwistSum&) const = default;

 private:
  std::vector<int> t_;
};

}  // namespace monadcoh
