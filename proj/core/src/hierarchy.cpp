#include "tpcamg/hierarchy.hpp"

#include "tpcamg/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace tpcamg {

namespace {

using index_t = std::ptrdiff_t;

index_t floor_div(index_t a, index_t b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
index_t ceil_div(index_t a, index_t b) { return -floor_div(-a, b); }

ToeplitzSpec coarsen_toeplitz(const ToeplitzSpec& t, std::size_t mc) {
  const Window& w = t.coefficients();
  if (w.empty()) return ToeplitzSpec::zero(mc);
  const auto lim = static_cast<index_t>(mc) - 1;
  const index_t lo = std::max(ceil_div(w.first - 2, 2), -lim);
  const index_t hi = std::min(floor_div(w.end() + 1, 2), lim);
  if (lo > hi) return ToeplitzSpec::zero(mc);
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (index_t k = lo; k <= hi; ++k)
    v.push_back(0.125 * ((t(2 * k - 2) + t(2 * k + 2)) + 4.0 * (t(2 * k - 1) + t(2 * k + 1)) + 6.0 * t(2 * k)));
  return ToeplitzSpec(mc, Window(lo, std::move(v)));
}

struct Range {
  index_t lo, hi; // inclusive; empty when lo > hi
};

Range hull(std::initializer_list<Range> rs) {
  Range out{1, 0};
  for (const Range& r : rs) {
    if (r.lo > r.hi) continue;
    if (out.lo > out.hi) out = r;
    else out = {std::min(out.lo, r.lo), std::max(out.hi, r.hi)};
  }
  return out;
}

Range support(const Window& w) { return w.empty() ? Range{1, 0} : Range{w.first, w.end() - 1}; }
// Values j with f(j) = w(offset - j) possibly nonzero.
Range reflected(const Window& w, index_t offset) {
  return w.empty() ? Range{1, 0} : Range{offset - (w.end() - 1), offset - w.first};
}
Range shifted(const Window& w, index_t offset) {
  return w.empty() ? Range{1, 0} : Range{w.first - offset, w.end() - 1 - offset};
}

// Coarse cross vector 0.125 * sum_s w_s G(2I+1+s) over fine indices j where G may be nonzero.
template <class G>
Window coarse_cross(std::size_t mc, Range js, G&& g) {
  if (js.lo > js.hi) return Window{};
  const index_t lo = std::max<index_t>(ceil_div(js.lo - 2, 2), 0);
  const index_t hi = std::min<index_t>(floor_div(js.hi, 2), static_cast<index_t>(mc) - 1);
  if (lo > hi) return Window{};
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (index_t i = lo; i <= hi; ++i) v.push_back(0.125 * ((g(2 * i) + g(2 * i + 2)) + 2.0 * g(2 * i + 1)));
  return Window(lo, std::move(v)).trim();
}

TpcParts coarsen_parts(const TpcParts& f) {
  const std::size_t m = f.m;
  if (m < 3) throw CoarsestLevelReached("coarsen_tpc: operator too small to coarsen");
  if (m % 2 == 0) throw ArgumentError("coarsen_tpc: half-size must be odd (n = 2^{k+1} - 1)");
  const std::size_t mc = (m - 1) / 2;
  const auto M = static_cast<index_t>(m);
  const ToeplitzSpec &a = f.a, &b = f.bbar, &c = f.cbar, &d = f.dbar;

  TpcParts out;
  out.m = mc;
  out.a = coarsen_toeplitz(a, mc);
  out.bbar = coarsen_toeplitz(b, mc);
  out.cbar = coarsen_toeplitz(c, mc);
  out.dbar = coarsen_toeplitz(d, mc);

  // The coarse center column/row draws on fine indices m-1, m, m+1 with weights 1/2, 1, 1/2
  // (prolongation) or 1/4, 1/2, 1/4 (restriction). Operand order is kept identical in the
  // column and row formulas so that symmetric input stays bit-for-bit symmetric.
  out.p = coarse_cross(mc, hull({reflected(a.coefficients(), M - 1), support(f.p), reflected(b.coefficients(), 0)}),
                       [&](index_t j) { return a(M - 1 - j) + 2.0 * f.p(j) + b(-j); });
  out.q = coarse_cross(mc, hull({shifted(a.coefficients(), 1 - M), support(f.q), support(c.coefficients())}),
                       [&](index_t j) { return a(j - M + 1) + 2.0 * f.q(j) + c(j); });
  out.xi = coarse_cross(mc, hull({reflected(c.coefficients(), M - 1), support(f.xi), reflected(d.coefficients(), 0)}),
                        [&](index_t j) { return c(M - 1 - j) + 2.0 * f.xi(j) + d(-j); });
  out.zeta = coarse_cross(mc, hull({shifted(b.coefficients(), 1 - M), support(f.zeta), support(d.coefficients())}),
                          [&](index_t j) { return b(j - M + 1) + 2.0 * f.zeta(j) + d(j); });
  out.o = 0.125 * (a(0) + 2.0 * f.p(M - 1) + b(1 - M) + 2.0 * f.q(M - 1) + 4.0 * f.o + 2.0 * f.zeta(0) +
                   c(M - 1) + 2.0 * f.xi(0) + d(0));
  return out;
}

} // namespace

void restrict_vector(std::span<const double> x, std::span<double> out) {
  if (x.size() < 3 || x.size() % 2 == 0) throw ArgumentError("restrict: length must be odd and >= 3");
  const std::size_t nc = (x.size() - 1) / 2;
  if (out.size() != nc) throw ArgumentError("restrict: output length mismatch");
  for (std::size_t i = 0; i < nc; ++i) out[i] = 0.25 * (x[2 * i] + 2.0 * x[2 * i + 1] + x[2 * i + 2]);
}

std::vector<double> restrict_vector(std::span<const double> x) {
  std::vector<double> out(x.size() >= 3 ? (x.size() - 1) / 2 : 0);
  restrict_vector(x, out);
  return out;
}

void prolong_add(std::span<const double> xc, std::span<double> fine) {
  if (xc.empty() || fine.size() != 2 * xc.size() + 1) throw ArgumentError("prolong: length mismatch");
  for (std::size_t i = 0; i < xc.size(); ++i) {
    fine[2 * i] += 0.5 * xc[i];
    fine[2 * i + 1] += xc[i];
    fine[2 * i + 2] += 0.5 * xc[i];
  }
}

std::vector<double> prolong_vector(std::span<const double> xc) {
  std::vector<double> fine(2 * xc.size() + 1, 0.0);
  prolong_add(xc, fine);
  return fine;
}

TpcOperator coarsen_tpc(const TpcOperator& fine) { return TpcOperator(coarsen_parts(fine.parts())); }

BandedCorrection coarsen_banded(const BandedCorrection& fine) {
  const std::size_t n = fine.size();
  if (n < 3 || n % 2 == 0) throw ArgumentError("coarsen_banded: size must be odd and >= 3");
  const std::size_t nc = (n - 1) / 2;
  const std::size_t beta = fine.bandwidth() / 2 + 1;
  BandedCorrection out = BandedCorrection::zero(nc, beta);
  const double w[3] = {1.0, 2.0, 1.0};
  const bool sym = fine.is_symmetric(0.0);
  const auto b = static_cast<index_t>(beta);
  for (index_t l = sym ? 0 : -b; l <= b; ++l) {
    auto band = out.band(l);
    for (std::size_t k = 0; k < band.size(); ++k) {
      const std::size_t I = l >= 0 ? k : k - static_cast<std::size_t>(l);
      const std::size_t J = l >= 0 ? k + static_cast<std::size_t>(l) : k;
      double s = 0.0;
      for (int si = 0; si < 3; ++si)
        for (int ti = 0; ti < 3; ++ti)
          s += w[si] * w[ti] * fine.entry(2 * I + static_cast<std::size_t>(si), 2 * J + static_cast<std::size_t>(ti));
      band[k] = 0.125 * s;
    }
    if (sym && l > 0) {
      auto mirror = out.band(-l);
      std::copy(band.begin(), band.end(), mirror.begin());
    }
  }
  return out;
}

TpcOperator coarsen(const TpcOperator& fine) {
  TpcParts parts = coarsen_parts(fine.parts());
  if (fine.parts().banded) parts.banded = coarsen_banded(*fine.parts().banded);
  return TpcOperator(std::move(parts));
}

DenseLu::DenseLu(std::size_t n, std::vector<double> entries) : n_(n), lu_(std::move(entries)), piv_(n) {
  if (lu_.size() != n * n) throw ArgumentError("DenseLu: need n*n entries");
  double scale = 0.0;
  for (double v : lu_) scale = std::max(scale, std::abs(v));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_[i * n + k]) > std::abs(lu_[p * n + k])) p = i;
    piv_[k] = p;
    if (!(std::abs(lu_[p * n + k]) > 1e-14 * scale)) throw SingularError("DenseLu: matrix is singular to working precision");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_[k * n + j], lu_[p * n + j]);
    const double inv = 1.0 / lu_[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = (lu_[i * n + k] *= inv);
      for (std::size_t j = k + 1; j < n; ++j) lu_[i * n + j] -= f * lu_[k * n + j];
    }
  }
}

void DenseLu::solve(std::span<const double> b, std::span<double> x) const {
  if (b.size() != n_ || x.size() != n_) throw ArgumentError("DenseLu::solve: length mismatch");
  std::copy(b.begin(), b.end(), x.begin());
  for (std::size_t k = 0; k < n_; ++k) std::swap(x[k], x[piv_[k]]);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_[i * n_ + j] * x[j];
  for (std::size_t i = n_; i-- > 0;) {
    for (std::size_t j = i + 1; j < n_; ++j) x[i] -= lu_[i * n_ + j] * x[j];
    x[i] /= lu_[i * n_ + i];
  }
}

Hierarchy::Hierarchy(std::vector<TpcOperator> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw ArgumentError("Hierarchy: no levels");
  for (const auto& op : levels_) {
    auto d = op.diagonal();
    for (double& v : d) {
      if (v == 0.0) throw SingularError("Hierarchy: zero diagonal entry, Jacobi smoother undefined");
      v = 1.0 / v;
    }
    inv_diag_.push_back(std::move(d));
  }
  const TpcOperator& c = levels_.back();
  const std::size_t n = c.size();
  std::vector<double> dense(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dense[i * n + j] = c.entry(i, j);
  lu_ = DenseLu(n, std::move(dense));
}

std::size_t Hierarchy::stored_coefficients() const noexcept {
  std::size_t s = 0;
  for (const auto& op : levels_) s += op.stored_coefficients();
  return s;
}

std::string Hierarchy::to_json() const {
  using nlohmann::json;
  auto window = [](const Window& w) { return json{{"first", w.first}, {"values", w.values}}; };
  json out = json::array();
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    const TpcParts& p = levels_[k].parts();
    json lv{{"level", k},
            {"n", levels_[k].size()},
            {"m", p.m},
            {"a", window(p.a.coefficients())},
            {"bbar", window(p.bbar.coefficients())},
            {"cbar", window(p.cbar.coefficients())},
            {"dbar", window(p.dbar.coefficients())},
            {"p", window(p.p)},
            {"q", window(p.q)},
            {"xi", window(p.xi)},
            {"zeta", window(p.zeta)},
            {"o", p.o}};
    if (p.banded) {
      json bands = json::object();
      const auto beta = static_cast<index_t>(p.banded->bandwidth());
      for (index_t l = -beta; l <= beta; ++l) {
        const auto b = p.banded->band(l);
        bands[std::to_string(l)] = std::vector<double>(b.begin(), b.end());
      }
      lv["banded"] = json{{"bandwidth", beta}, {"bands", bands}};
    }
    out.push_back(std::move(lv));
  }
  return out.dump(2);
}

Hierarchy build_hierarchy(const TpcOperator& finest, std::size_t coarsest_size_limit) {
  if (coarsest_size_limit < 3) throw ArgumentError("build_hierarchy: coarsest size limit must be >= 3");
  const std::size_t n = finest.size();
  if (((n + 1) & n) != 0) throw ArgumentError("build_hierarchy: finest size must be 2^{K+1} - 1");
  std::vector<TpcOperator> levels{finest};
  while (levels.back().size() > coarsest_size_limit) levels.push_back(coarsen(levels.back()));
  return Hierarchy(std::move(levels));
}

Hierarchy build_hierarchy_levels(const TpcOperator& finest, std::size_t max_levels) {
  if (max_levels < 1) throw ArgumentError("build_hierarchy_levels: need at least one level");
  std::vector<TpcOperator> levels{finest};
  while (levels.size() < max_levels && levels.back().half_size() >= 3) levels.push_back(coarsen(levels.back()));
  return Hierarchy(std::move(levels));
}

} // namespace tpcamg
