#include "monadcoh/matrix.hpp"

#include <algorithm>

namespace monadcoh {

namespace {

using Row = std::vector<std::pair<int, std::uint32_t>>;

// r -= c * pivot (merge on column indices), dropping zeros.
Row subtract_scaled(const Fp& f, const Row& r, const Row& pivot,
                    std::uint32_t c) {
  Row out;
  out.reserve(r.size() + pivot.size());
  std::size_t i = 0, j = 0;
  const std::uint32_t nc = f.neg(c);
  while (i < r.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < r.size() && r[i].first < pivot[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || pivot[j].first < r[i].first) {
      out.emplace_back(pivot[j].first, f.mul(nc, pivot[j].second));
      ++j;
    } else {
      std::uint32_t v = f.add(r[i].second, f.mul(nc, pivot[j].second));
      if (v != 0) out.emplace_back(r[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

long long sparse_rank_fp(const Fp& f, SparseRowsFp m) {
  // bucket row indices by leading column
  std::vector<std::vector<int>> bucket((std::size_t)m.cols);
  for (int r = 0; r < (int)m.data.size(); ++r)
    if (!m.data[(std::size_t)r].empty())
      bucket[(std::size_t)m.data[(std::size_t)r][0].first].push_back(r);

  long long rank = 0;
  for (int col = 0; col < m.cols; ++col) {
    auto& rows_here = bucket[(std::size_t)col];
    if (rows_here.empty()) continue;
    std::sort(rows_here.begin(), rows_here.end());
    int pivot = rows_here[0];
    for (int r : rows_here)
      if (m.data[(std::size_t)r].size() < m.data[(std::size_t)pivot].size() ||
          (m.data[(std::size_t)r].size() ==
               m.data[(std::size_t)pivot].size() &&
           r < pivot))
        pivot = r;
    ++rank;
    const Row& prow = m.data[(std::size_t)pivot];
    std::uint32_t pinv = f.inv(prow[0].second);
    for (int r : rows_here) {
      if (r == pivot) continue;
      Row& row = m.data[(std::size_t)r];
      std::uint32_t c = f.mul(row[0].second, pinv);
      row = subtract_scaled(f, row, prow, c);
      if (!row.empty()) bucket[(std::size_t)row[0].first].push_back(r);
    }
    m.data[(std::size_t)pivot].clear();
    rows_here.clear();
  }
  return rank;
}

}  // namespace monadcoh
