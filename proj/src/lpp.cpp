#include "hammersley/lpp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace hammersley {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// order-preserving bijection from double to uint64 for radix passes
inline std::uint64_t sort_key(double d) {
  std::uint64_t b;
  std::memcpy(&b, &d, sizeof b);
  return (b & 0x8000000000000000ULL) ? ~b : (b | 0x8000000000000000ULL);
}

// ---------------------------------------------------------------------------
// interval extraction

struct IntervalPoints {
  std::vector<uint32_t> cloud_idx;  // ascending, i.e. lex (x, t) order
  std::vector<double> x, t, w;
  std::size_t size() const { return cloud_idx.size(); }
};

IntervalPoints extract_interval(const PointCloud& cloud, Point2 p, Point2 q,
                                bool positive_only) {
  const auto& pts = cloud.points();
  auto lo = std::upper_bound(
      pts.begin(), pts.end(), p.x,
      [](double v, const MarkedPoint& mp) { return v < mp.x; });
  auto hi = std::upper_bound(
      pts.begin(), pts.end(), q.x,
      [](double v, const MarkedPoint& mp) { return v < mp.x; });
  IntervalPoints out;
  out.cloud_idx.reserve(std::size_t(hi - lo));
  for (auto it = lo; it != hi; ++it) {
    if (it->t <= p.t || it->t > q.t) continue;
    if (positive_only && it->w <= 0.0) continue;
    out.cloud_idx.push_back(uint32_t(it - pts.begin()));
    out.x.push_back(it->x);
    out.t.push_back(it->t);
    out.w.push_back(it->w);
  }
  return out;
}

std::vector<uint32_t> group_starts(const std::vector<double>& xs) {
  std::vector<uint32_t> gs;
  gs.reserve(xs.size() + 1);
  for (uint32_t i = 0; i < xs.size(); ++i)
    if (i == 0 || xs[i] != xs[i - 1]) gs.push_back(i);
  gs.push_back(uint32_t(xs.size()));
  return gs;
}

// ---------------------------------------------------------------------------
// divide-and-conquer DP sweep
//
// value[i] = w[i] + max(0, max{ value[j] : group[j] < group[i], tkey[j] <
// tkey[i] }). Groups are maximal runs of equal x in processing order, so the
// dominance is strict in both coordinates. The recursion solves the left
// groups, merges their finalized values into the right groups' pending
// maxima along the t-order, then solves the right groups. Records travel
// through the merges carrying their pending/final value, which keeps every
// pass sequential; the only scattered accesses are one weight load and one
// value store per point.

struct DpRec {
  double tkey;
  double vp;  // pending max until the group is finalized, value afterwards
  uint32_t idx;
  uint32_t aux;  // candidate kernels stash the argmax here
};

void radix_sort_records(std::vector<DpRec>& recs,
                        std::vector<DpRec>& scratch) {
  const std::size_t m = recs.size();
  scratch.resize(m);
  std::vector<uint32_t> count(1 << 16);
  for (int pass = 0; pass < 4; ++pass) {
    const int shift = pass * 16;
    std::fill(count.begin(), count.end(), 0u);
    for (const DpRec& r : recs)
      ++count[(sort_key(r.tkey) >> shift) & 0xFFFF];
    bool uniform = false;
    for (uint32_t c : count)
      if (c == m) uniform = true;
    if (uniform) continue;
    uint32_t sum = 0;
    for (uint32_t& c : count) {
      const uint32_t v = c;
      c = sum;
      sum += v;
    }
    for (const DpRec& r : recs)
      scratch[count[(sort_key(r.tkey) >> shift) & 0xFFFF]++] = r;
    recs.swap(scratch);
  }
}

struct LeanCtx {
  const double* w;
  const uint32_t* group_start;
  const uint32_t* group_id;  // per processing index
  DpRec* rec;
  DpRec* scratch;
};

// Records in [s_lo, s_hi) hold exactly the points of groups [g_lo, g_hi),
// t-ascending; on return they are t-ascending again with vp finalized.
void lean_rec(LeanCtx& c, uint32_t g_lo, uint32_t g_hi, uint32_t s_lo,
              uint32_t s_hi) {
  if (g_hi - g_lo == 1) {
    for (uint32_t k = s_lo; k < s_hi; ++k)
      c.rec[k].vp += c.w[c.rec[k].idx];
    return;
  }
  constexpr uint32_t kBlock = 48;
  if (s_hi - s_lo <= kBlock) {
    // solve the block directly in processing order; t-order is untouched
    uint32_t ord[kBlock];
    const uint32_t k = s_hi - s_lo;
    for (uint32_t i = 0; i < k; ++i) ord[i] = s_lo + i;
    std::sort(ord, ord + k, [&](uint32_t a, uint32_t b) {
      return c.rec[a].idx < c.rec[b].idx;
    });
    for (uint32_t a = 0; a < k; ++a) {
      DpRec& ra = c.rec[ord[a]];
      const uint32_t ga = c.group_id[ra.idx];
      double best = ra.vp;
      for (uint32_t b = 0; b < a; ++b) {
        const DpRec& rb = c.rec[ord[b]];
        if (c.group_id[rb.idx] < ga && rb.tkey < ra.tkey && rb.vp > best)
          best = rb.vp;
      }
      ra.vp = c.w[ra.idx] + best;
    }
    return;
  }
  const uint32_t g_mid = g_lo + (g_hi - g_lo) / 2;
  const uint32_t split = c.group_start[g_mid];

  uint32_t nl = 0;
  for (uint32_t k = s_lo; k < s_hi; ++k)
    if (c.rec[k].idx < split) ++nl;
  {
    uint32_t li = s_lo, ri = s_lo + nl;
    for (uint32_t k = s_lo; k < s_hi; ++k) {
      const DpRec& r = c.rec[k];
      c.scratch[r.idx < split ? li++ : ri++] = r;
    }
    std::copy(c.scratch + s_lo, c.scratch + s_hi, c.rec + s_lo);
  }
  const uint32_t s_mid = s_lo + nl;

  lean_rec(c, g_lo, g_mid, s_lo, s_mid);

  {
    uint32_t a = s_lo;
    double best = 0.0;
    for (uint32_t k = s_mid; k < s_hi; ++k) {
      const double tr = c.rec[k].tkey;
      while (a < s_mid && c.rec[a].tkey < tr) {
        if (c.rec[a].vp > best) best = c.rec[a].vp;
        ++a;
      }
      if (best > c.rec[k].vp) c.rec[k].vp = best;
    }
  }

  lean_rec(c, g_mid, g_hi, s_mid, s_hi);

  {
    uint32_t a = s_lo, b = s_mid, o = s_lo;
    while (a < s_mid && b < s_hi)
      c.scratch[o++] = c.rec[b].tkey < c.rec[a].tkey ? c.rec[b++] : c.rec[a++];
    while (a < s_mid) c.scratch[o++] = c.rec[a++];
    while (b < s_hi) c.scratch[o++] = c.rec[b++];
    std::copy(c.scratch + s_lo, c.scratch + s_hi, c.rec + s_lo);
  }
}

// tkey must increase strictly along any admissible step; groups come from
// equal-x runs of the processing order.
void dp_values(const std::vector<double>& tkey, const std::vector<double>& w,
               const std::vector<uint32_t>& group_start,
               std::vector<double>& value) {
  const std::size_t m = tkey.size();
  value.assign(m, 0.0);
  if (m == 0) return;
  std::vector<DpRec> recs(m), scratch(m);
  for (std::size_t i = 0; i < m; ++i)
    recs[i] = {tkey[i], 0.0, uint32_t(i), 0};
  radix_sort_records(recs, scratch);
  std::vector<uint32_t> gid(m);
  for (std::size_t g = 0; g + 1 < group_start.size(); ++g)
    for (uint32_t i = group_start[g]; i < group_start[g + 1]; ++i)
      gid[i] = uint32_t(g);
  LeanCtx ctx{w.data(), group_start.data(), gid.data(), recs.data(),
              scratch.data()};
  lean_rec(ctx, 0, uint32_t(group_start.size() - 1), 0, uint32_t(m));
  for (const DpRec& r : recs) value[r.idx] = r.vp;
}

// Same sweep carrying the argmax; ties in the maxima resolve to the lowest
// t, then lowest x. aux holds the best predecessor (processing index + 1,
// 0 for none) while vp holds its value until the record finalizes.

struct CandCtx {
  const double* t;
  const double* x;
  const double* w;
  const uint32_t* group_start;
  DpRec* rec;
  DpRec* scratch;

  bool better(double v, uint32_t i, double bv, uint32_t baux) const {
    if (baux == 0) return true;
    if (v != bv) return v > bv;
    const uint32_t bi = baux - 1;
    if (t[i] != t[bi]) return t[i] < t[bi];
    return x[i] < x[bi];
  }
};

void cand_rec(CandCtx& c, uint32_t g_lo, uint32_t g_hi, uint32_t s_lo,
              uint32_t s_hi) {
  if (g_hi - g_lo == 1) {
    for (uint32_t k = s_lo; k < s_hi; ++k) {
      DpRec& r = c.rec[k];
      r.vp = c.w[r.idx] + (r.aux != 0 ? r.vp : 0.0);
    }
    return;
  }
  const uint32_t g_mid = g_lo + (g_hi - g_lo) / 2;
  const uint32_t split = c.group_start[g_mid];

  uint32_t nl = 0;
  for (uint32_t k = s_lo; k < s_hi; ++k)
    if (c.rec[k].idx < split) ++nl;
  {
    uint32_t li = s_lo, ri = s_lo + nl;
    for (uint32_t k = s_lo; k < s_hi; ++k) {
      const DpRec& r = c.rec[k];
      c.scratch[r.idx < split ? li++ : ri++] = r;
    }
    std::copy(c.scratch + s_lo, c.scratch + s_hi, c.rec + s_lo);
  }
  const uint32_t s_mid = s_lo + nl;

  cand_rec(c, g_lo, g_mid, s_lo, s_mid);

  {
    uint32_t a = s_lo;
    double best_v = 0.0;
    uint32_t best_aux = 0;
    for (uint32_t k = s_mid; k < s_hi; ++k) {
      DpRec& r = c.rec[k];
      const double tr = r.tkey;
      while (a < s_mid && c.rec[a].tkey < tr) {
        if (c.better(c.rec[a].vp, c.rec[a].idx, best_v, best_aux)) {
          best_v = c.rec[a].vp;
          best_aux = c.rec[a].idx + 1;
        }
        ++a;
      }
      if (best_aux != 0 &&
          c.better(best_v, best_aux - 1, r.vp, r.aux)) {
        r.vp = best_v;
        r.aux = best_aux;
      }
    }
  }

  cand_rec(c, g_mid, g_hi, s_mid, s_hi);

  {
    uint32_t a = s_lo, b = s_mid, o = s_lo;
    while (a < s_mid && b < s_hi)
      c.scratch[o++] = c.rec[b].tkey < c.rec[a].tkey ? c.rec[b++] : c.rec[a++];
    while (a < s_mid) c.scratch[o++] = c.rec[a++];
    while (b < s_hi) c.scratch[o++] = c.rec[b++];
    std::copy(c.scratch + s_lo, c.scratch + s_hi, c.rec + s_lo);
  }
}

// ---------------------------------------------------------------------------
// max segment tree with deletions for the geodesic walk

class WalkTree {
 public:
  explicit WalkTree(const std::vector<double>& leaf_vals)
      : n_(uint32_t(leaf_vals.size())) {
    size_ = 1;
    while (size_ < std::max(n_, 1u)) size_ <<= 1;
    node_.assign(2 * size_, kNegInf);
    for (uint32_t i = 0; i < n_; ++i) node_[size_ + i] = leaf_vals[i];
    for (uint32_t i = size_ - 1; i >= 1; --i)
      node_[i] = std::max(node_[2 * i], node_[2 * i + 1]);
  }

  void deactivate(uint32_t pos) {
    uint32_t i = pos + size_;
    node_[i] = kNegInf;
    for (i >>= 1; i >= 1; i >>= 1)
      node_[i] = std::max(node_[2 * i], node_[2 * i + 1]);
  }

  // max over leaves [l, n) and the leftmost position attaining it
  std::pair<double, uint32_t> max_leftmost(uint32_t l) const {
    double m = kNegInf;
    for (uint32_t lo = l + size_, hi = n_ + size_; lo < hi;
         lo >>= 1, hi >>= 1) {
      if (lo & 1) m = std::max(m, node_[lo++]);
      if (hi & 1) m = std::max(m, node_[--hi]);
    }
    if (m == kNegInf) return {m, 0};
    return {m, find_first(1, 0, size_, l, m)};
  }

 private:
  uint32_t find_first(uint32_t node, uint32_t node_lo, uint32_t node_hi,
                      uint32_t l, double target) const {
    if (node_hi <= l || node_[node] < target) return UINT32_MAX;
    if (node_lo + 1 == node_hi) return node_lo;
    const uint32_t mid = (node_lo + node_hi) / 2;
    const uint32_t left = find_first(2 * node, node_lo, mid, l, target);
    if (left != UINT32_MAX) return left;
    return find_first(2 * node + 1, mid, node_hi, l, target);
  }

  uint32_t n_, size_;
  std::vector<double> node_;
};

// leaf order sorted by (t, x): radix by t, then a local fix for equal-t runs
std::vector<uint32_t> t_then_x_order(const std::vector<double>& t,
                                     const std::vector<double>& x) {
  const std::size_t m = t.size();
  std::vector<DpRec> recs(m), scratch(m);
  for (std::size_t i = 0; i < m; ++i) recs[i] = {t[i], 0.0, uint32_t(i), 0};
  radix_sort_records(recs, scratch);
  std::vector<uint32_t> ord(m);
  for (std::size_t i = 0; i < m; ++i) ord[i] = recs[i].idx;
  for (std::size_t i = 0; i < m;) {
    std::size_t j = i + 1;
    while (j < m && t[ord[j]] == t[ord[i]]) ++j;
    if (j - i > 1)
      std::sort(ord.begin() + std::ptrdiff_t(i), ord.begin() + std::ptrdiff_t(j),
                [&](uint32_t a, uint32_t b) { return x[a] < x[b]; });
    i = j;
  }
  return ord;
}

}  // namespace

// ---------------------------------------------------------------------------

double last_passage(const PointCloud& cloud, Point2 p, Point2 q) {
  require(leq(p, q), "last_passage: p must be componentwise <= q");
  IntervalPoints iv = extract_interval(cloud, p, q, /*positive_only=*/true);
  if (iv.size() == 0) return 0.0;
  std::vector<double> value;
  dp_values(iv.t, iv.w, group_starts(iv.x), value);
  double best = 0.0;
  for (double v : value)
    if (v > best) best = v;
  return best;
}

PassageField passage_field(const PointCloud& cloud, Point2 source) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  IntervalPoints iv =
      extract_interval(cloud, source, {inf, inf}, /*positive_only=*/false);
  const std::size_t m = iv.size();

  std::vector<DpRec> recs(m), scratch(m);
  if (m > 0) {
    for (std::size_t i = 0; i < m; ++i)
      recs[i] = {iv.t[i], 0.0, uint32_t(i), 0};
    radix_sort_records(recs, scratch);
    const std::vector<uint32_t> gs = group_starts(iv.x);
    CandCtx ctx{iv.t.data(), iv.x.data(),     iv.w.data(),
                gs.data(),   recs.data(),     scratch.data()};
    cand_rec(ctx, 0, uint32_t(gs.size() - 1), 0, uint32_t(m));
  }

  PassageField field;
  field.source = source;
  field.value.assign(cloud.size(), std::numeric_limits<double>::quiet_NaN());
  field.pred.assign(cloud.size(), -1);
  for (const DpRec& r : recs) {
    field.value[iv.cloud_idx[r.idx]] = r.vp;
    field.pred[iv.cloud_idx[r.idx]] =
        r.aux != 0 ? std::int64_t(iv.cloud_idx[r.aux - 1]) : -1;
  }
  return field;
}

Geodesic lowest_geodesic(const PointCloud& cloud, Point2 p, Point2 q) {
  require(leq(p, q), "geodesic: p must be componentwise <= q");
  Geodesic geo;
  geo.start = p;
  geo.end = q;

  IntervalPoints iv = extract_interval(cloud, p, q, /*positive_only=*/true);
  const std::size_t m = iv.size();
  if (m == 0) return geo;

  // passage values toward q: run the sweep on the reversed order with
  // negated t so that "predecessor" means strict dominator
  std::vector<double> rt(m), rw(m), rx(m);
  for (std::size_t i = 0; i < m; ++i) {
    rt[i] = -iv.t[m - 1 - i];
    rw[i] = iv.w[m - 1 - i];
    rx[i] = iv.x[m - 1 - i];
  }
  std::vector<double> rvalue;
  dp_values(rt, rw, group_starts(rx), rvalue);
  std::vector<double> value_b(m);
  for (std::size_t i = 0; i < m; ++i) value_b[i] = rvalue[m - 1 - i];

  // walk forward: among the strict dominators of the current point, take the
  // best completion, breaking value ties toward minimal t then minimal x
  std::vector<uint32_t> leaf_order = t_then_x_order(iv.t, iv.x);
  std::vector<double> leaf_t(m), leaf_val(m);
  std::vector<uint32_t> leaf_of(m);
  for (uint32_t pos = 0; pos < m; ++pos) {
    const uint32_t j = leaf_order[pos];
    leaf_t[pos] = iv.t[j];
    leaf_val[pos] = value_b[j];
    leaf_of[j] = pos;
  }
  WalkTree tree(leaf_val);

  Point2 c = p;
  uint32_t del = 0;
  for (;;) {
    while (del < m && iv.x[del] <= c.x) tree.deactivate(leaf_of[del++]);
    const uint32_t l = uint32_t(
        std::upper_bound(leaf_t.begin(), leaf_t.end(), c.t) - leaf_t.begin());
    if (l >= m) break;
    const auto [best, pos] = tree.max_leftmost(l);
    if (!(best > 0.0)) break;
    const uint32_t j = leaf_order[pos];
    geo.chain.push_back(cloud.points()[iv.cloud_idx[j]]);
    if (geo.chain.size() == 1) geo.value = value_b[j];
    c = {iv.x[j], iv.t[j]};
  }
  return geo;
}

BruteForceResult brute_force_last_passage(const PointCloud& cloud, Point2 p,
                                          Point2 q) {
  require(leq(p, q), "brute force: p must be componentwise <= q");
  IntervalPoints iv = extract_interval(cloud, p, q, /*positive_only=*/false);
  const std::size_t m = iv.size();
  require(m <= 20, "brute force: more than 20 points in the order interval");

  BruteForceResult res;
  res.value = 0.0;
  res.optimal_chains = {{}};  // the empty chain attains 0

  std::vector<uint32_t> chain;
  double sum = 0.0;

  auto record = [&]() {
    if (sum > res.value) {
      res.value = sum;
      res.optimal_chains.clear();
    }
    if (sum == res.value) {
      std::vector<MarkedPoint> pts;
      pts.reserve(chain.size());
      for (uint32_t j : chain) pts.push_back(cloud.points()[iv.cloud_idx[j]]);
      res.optimal_chains.push_back(std::move(pts));
    }
  };

  auto extend = [&](auto&& self, uint32_t from) -> void {
    for (uint32_t j = from; j < m; ++j) {
      if (!chain.empty()) {
        const uint32_t last = chain.back();
        if (!(iv.x[last] < iv.x[j] && iv.t[last] < iv.t[j])) continue;
      }
      chain.push_back(j);
      sum += iv.w[j];
      record();
      self(self, j + 1);
      sum -= iv.w[j];
      chain.pop_back();
    }
  };
  extend(extend, 0);
  return res;
}

bool staircase_pointwise_leq(const std::vector<MarkedPoint>& a,
                             const std::vector<MarkedPoint>& b, Point2 start) {
  auto height = [&](const std::vector<MarkedPoint>& chain, double x) {
    double h = start.t;
    for (const MarkedPoint& p : chain) {
      if (p.x > x) break;
      h = std::max(h, p.t);
    }
    return h;
  };
  std::vector<double> xs{start.x};
  for (const MarkedPoint& p : a) xs.push_back(p.x);
  for (const MarkedPoint& p : b) xs.push_back(p.x);
  for (double x : xs)
    if (height(a, x) > height(b, x)) return false;
  return true;
}

bool r_out_member(const PointCloud& cloud, const MarkedPoint& p, Point2 q) {
  require(leq(p.pos(), q), "r_out_member: q must dominate p");
  if (p.pos() == q) return true;
  const Geodesic geo = lowest_geodesic(cloud, {0.0, 0.0}, q);
  for (const MarkedPoint& mp : geo.chain)
    if (mp.x == p.x && mp.t == p.t) return true;
  return false;
}

}  // namespace hammersley
