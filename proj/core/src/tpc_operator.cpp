#include "tpcamg/tpc_operator.hpp"

#include "tpcamg/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tpcamg {

namespace {

using index_t = std::ptrdiff_t;

Window clip_cross(Window w, std::size_t m) {
  if (w.empty()) return w;
  const index_t a = std::max<index_t>(w.first, 0);
  const index_t b = std::min<index_t>(w.end(), static_cast<index_t>(m));
  if (a >= b) return Window{};
  std::vector<double> vals(w.values.begin() + (a - w.first), w.values.begin() + (b - w.first));
  Window out(a, std::move(vals));
  return out.trim();
}

double dot(const Window& w, std::span<const double> x) {
  double s = 0.0;
  for (index_t i = w.first; i < w.end(); ++i) s += w.values[static_cast<std::size_t>(i - w.first)] * x[static_cast<std::size_t>(i)];
  return s;
}

void axpy(const Window& w, double alpha, std::span<double> y) {
  if (alpha == 0.0) return;
  for (index_t i = w.first; i < w.end(); ++i) y[static_cast<std::size_t>(i)] += alpha * w.values[static_cast<std::size_t>(i - w.first)];
}

bool same_window(const Window& a, const Window& b, double tol) {
  const index_t lo = std::min(a.first, b.first);
  const index_t hi = std::max(a.end(), b.end());
  for (index_t i = lo; i < hi; ++i)
    if (std::abs(a(i) - b(i)) > tol) return false;
  return true;
}

struct ApplyScratch {
  std::vector<double> real;
  std::vector<std::complex<double>> fv, fw, out;
};

ApplyScratch& apply_scratch() {
  thread_local ApplyScratch s;
  return s;
}

} // namespace

// ---------------------------------------------------------------- banded

BandedCorrection::BandedCorrection(std::size_t n, std::size_t bandwidth,
                                   std::vector<std::vector<double>> bands)
    : n_(n), beta_(bandwidth), bands_(std::move(bands)) {
  if (n == 0) throw ArgumentError("BandedCorrection: size must be positive");
  if (bands_.size() != 2 * beta_ + 1) throw ArgumentError("BandedCorrection: need 2*bandwidth+1 bands");
  for (std::size_t k = 0; k < bands_.size(); ++k) {
    const std::size_t off = k > beta_ ? k - beta_ : beta_ - k;
    const std::size_t want = off < n ? n - off : 0;
    if (bands_[k].size() != want) throw ArgumentError("BandedCorrection: band length must be n - |l|");
  }
}

BandedCorrection BandedCorrection::diagonal(std::vector<double> diag) {
  const std::size_t n = diag.size();
  std::vector<std::vector<double>> bands;
  bands.push_back(std::move(diag));
  return BandedCorrection(n, 0, std::move(bands));
}

BandedCorrection BandedCorrection::zero(std::size_t n, std::size_t bandwidth) {
  std::vector<std::vector<double>> bands(2 * bandwidth + 1);
  for (std::size_t k = 0; k < bands.size(); ++k) {
    const std::size_t off = k > bandwidth ? k - bandwidth : bandwidth - k;
    bands[k].assign(off < n ? n - off : 0, 0.0);
  }
  return BandedCorrection(n, bandwidth, std::move(bands));
}

std::span<const double> BandedCorrection::band(std::ptrdiff_t l) const {
  if (std::abs(l) > static_cast<index_t>(beta_)) throw ArgumentError("BandedCorrection::band: outside bandwidth");
  return bands_[static_cast<std::size_t>(l + static_cast<index_t>(beta_))];
}

std::span<double> BandedCorrection::band(std::ptrdiff_t l) {
  if (std::abs(l) > static_cast<index_t>(beta_)) throw ArgumentError("BandedCorrection::band: outside bandwidth");
  return bands_[static_cast<std::size_t>(l + static_cast<index_t>(beta_))];
}

double BandedCorrection::entry(std::size_t i, std::size_t j) const noexcept {
  const index_t l = static_cast<index_t>(j) - static_cast<index_t>(i);
  if (i >= n_ || j >= n_ || std::abs(l) > static_cast<index_t>(beta_)) return 0.0;
  const auto& b = bands_[static_cast<std::size_t>(l + static_cast<index_t>(beta_))];
  return b[std::min(i, j)];
}

std::size_t BandedCorrection::stored() const noexcept {
  std::size_t s = 0;
  for (const auto& b : bands_) s += b.size();
  return s;
}

bool BandedCorrection::is_symmetric(double tol) const {
  for (std::size_t l = 1; l <= beta_; ++l) {
    const auto& up = bands_[beta_ + l];
    const auto& lo = bands_[beta_ - l];
    for (std::size_t k = 0; k < up.size(); ++k)
      if (std::abs(up[k] - lo[k]) > tol) return false;
  }
  return true;
}

void BandedCorrection::apply_add(std::span<const double> x, std::span<double> y) const {
  if (x.size() != n_ || y.size() != n_) throw ArgumentError("BandedCorrection::apply_add: length mismatch");
  for (std::size_t k = 0; k < bands_.size(); ++k) {
    const auto& b = bands_[k];
    if (k >= beta_) {
      const std::size_t l = k - beta_;
      for (std::size_t i = 0; i < b.size(); ++i) y[i] += b[i] * x[i + l];
    } else {
      const std::size_t l = beta_ - k;
      for (std::size_t j = 0; j < b.size(); ++j) y[j + l] += b[j] * x[j];
    }
  }
}

BandedCorrection operator+(const BandedCorrection& a, const BandedCorrection& b) {
  if (a.n_ != b.n_) throw ArgumentError("BandedCorrection: size mismatch in sum");
  BandedCorrection out = BandedCorrection::zero(a.n_, std::max(a.beta_, b.beta_));
  for (const auto* src : {&a, &b}) {
    const auto beta = static_cast<index_t>(src->beta_);
    for (index_t l = -beta; l <= beta; ++l) {
      auto dst = out.band(l);
      const auto s = src->band(l);
      for (std::size_t k = 0; k < s.size(); ++k) dst[k] += s[k];
    }
  }
  return out;
}

BandedCorrection BandedCorrection::scaled(double s) const {
  BandedCorrection out = *this;
  for (auto& b : out.bands_)
    for (auto& v : b) v *= s;
  return out;
}

// ---------------------------------------------------------------- block vector

BlockVector::BlockVector(std::vector<double> v_part, std::vector<double> w_part)
    : v(std::move(v_part)), w(std::move(w_part)) {
  if (w.size() != v.size() + 1) throw ArgumentError("BlockVector: w must have m+1 entries");
}

BlockVector BlockVector::from_flat(std::span<const double> x) {
  if (x.size() % 2 == 0) throw ArgumentError("BlockVector::from_flat: length must be odd");
  const std::size_t m = x.size() / 2;
  return BlockVector(std::vector<double>(x.begin(), x.begin() + static_cast<index_t>(m)),
                     std::vector<double>(x.begin() + static_cast<index_t>(m), x.end()));
}

std::vector<double> BlockVector::flat() const {
  std::vector<double> x(v);
  x.insert(x.end(), w.begin(), w.end());
  return x;
}

// ---------------------------------------------------------------- operator

TpcOperator::TpcOperator(TpcParts parts) : parts_(std::move(parts)) {
  const std::size_t m = parts_.m;
  if (m == 0) throw ArgumentError("TpcOperator: half-size must be positive");
  for (const auto* t : {&parts_.a, &parts_.bbar, &parts_.cbar, &parts_.dbar})
    if (t->size() != m) throw ArgumentError("TpcOperator: Toeplitz block size must equal m");
  for (auto* w : {&parts_.p, &parts_.q, &parts_.xi, &parts_.zeta}) *w = clip_cross(std::move(*w), m);
  if (parts_.banded && parts_.banded->size() != 2 * m + 1)
    throw ArgumentError("TpcOperator: banded correction size must equal 2m+1");

  std::size_t need = 0;
  for (const auto* t : {&parts_.a, &parts_.bbar, &parts_.cbar, &parts_.dbar})
    if (!t->coefficients().empty()) need = std::max(need, embedding_length(*t));
  if (need == 0) return;
  len_ = fast_fft_length(need);
  fft_.emplace(len_);
  auto symbol = [&](const ToeplitzSpec& t) {
    return t.coefficients().empty() ? std::vector<std::complex<double>>{} : embedding_symbol(t, *fft_);
  };
  sa_ = symbol(parts_.a);
  sb_ = symbol(parts_.bbar);
  sc_ = symbol(parts_.cbar);
  sd_ = symbol(parts_.dbar);
}

TpcOperator TpcOperator::identity(std::size_t m) {
  TpcParts p;
  p.m = m;
  p.a = ToeplitzSpec::identity(m);
  p.dbar = ToeplitzSpec::identity(m);
  p.bbar = ToeplitzSpec::zero(m);
  p.cbar = ToeplitzSpec::zero(m);
  p.o = 1.0;
  return TpcOperator(std::move(p));
}

void TpcOperator::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t m = parts_.m, n = 2 * m + 1;
  if (x.size() != n || y.size() != n) throw ArgumentError("TpcOperator::apply: length mismatch");
  const auto v = x.subspan(0, m);
  const double wo = x[m];
  const auto wb = x.subspan(m + 1, m);
  auto yv = y.subspan(0, m);
  auto yb = y.subspan(m + 1, m);

  std::fill(y.begin(), y.end(), 0.0);
  if (fft_) {
    auto& s = apply_scratch();
    const std::size_t ns = fft_->spectrum_size();
    s.real.resize(len_);
    const bool use_v = !sa_.empty() || !sc_.empty();
    const bool use_w = !sb_.empty() || !sd_.empty();
    auto forward = [&](std::span<const double> part, std::vector<std::complex<double>>& spec) {
      std::fill(s.real.begin(), s.real.end(), 0.0);
      std::copy(part.begin(), part.end(), s.real.begin());
      spec.resize(ns);
      fft_->forward(s.real, spec);
    };
    if (use_v) forward(v, s.fv);
    if (use_w) forward(wb, s.fw);
    const double scale = 1.0 / static_cast<double>(len_);
    auto combine = [&](const std::vector<std::complex<double>>& s1, const std::vector<std::complex<double>>& s2,
                       std::span<double> dst) {
      if (s1.empty() && s2.empty()) return;
      s.out.assign(ns, {0.0, 0.0});
      if (!s1.empty())
        for (std::size_t k = 0; k < ns; ++k) s.out[k] += s1[k] * s.fv[k];
      if (!s2.empty())
        for (std::size_t k = 0; k < ns; ++k) s.out[k] += s2[k] * s.fw[k];
      fft_->inverse(s.out, s.real);
      for (std::size_t i = 0; i < m; ++i) dst[i] = scale * s.real[i];
    };
    combine(sa_, sb_, yv);
    combine(sc_, sd_, yb);
  }
  axpy(parts_.p, wo, yv);
  axpy(parts_.xi, wo, yb);
  y[m] = dot(parts_.q, v) + parts_.o * wo + dot(parts_.zeta, wb);
  if (parts_.banded) parts_.banded->apply_add(x, y);
}

std::vector<double> TpcOperator::apply(std::span<const double> x) const {
  std::vector<double> y(x.size());
  apply(x, y);
  return y;
}

void TpcOperator::residual(std::span<const double> b, std::span<const double> x,
                           std::span<double> r) const {
  if (b.size() != size() || r.size() != size()) throw ArgumentError("TpcOperator::residual: length mismatch");
  apply(x, r);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
}

double TpcOperator::entry(std::size_t i, std::size_t j) const noexcept {
  const std::size_t m = parts_.m;
  double val = parts_.banded ? parts_.banded->entry(i, j) : 0.0;
  const auto col = static_cast<index_t>(j < m ? j : j - m - 1);
  const auto row = static_cast<index_t>(i < m ? i : i - m - 1);
  if (i == m && j == m) return val + parts_.o;
  if (i == m) return val + (j < m ? parts_.q(col) : parts_.zeta(col));
  if (j == m) return val + (i < m ? parts_.p(row) : parts_.xi(row));
  const ToeplitzSpec& t = i < m ? (j < m ? parts_.a : parts_.bbar) : (j < m ? parts_.cbar : parts_.dbar);
  return val + t(col - row);
}

std::vector<double> TpcOperator::diagonal() const {
  const std::size_t m = parts_.m;
  std::vector<double> d(2 * m + 1);
  std::fill(d.begin(), d.begin() + static_cast<index_t>(m), parts_.a(0));
  d[m] = parts_.o;
  std::fill(d.begin() + static_cast<index_t>(m + 1), d.end(), parts_.dbar(0));
  if (parts_.banded) {
    const auto b0 = parts_.banded->band(0);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += b0[i];
  }
  return d;
}

bool TpcOperator::is_symmetric(double tol) const {
  if (!parts_.a.is_symmetric(tol) || !parts_.dbar.is_symmetric(tol)) return false;
  const Window& b = parts_.bbar.coefficients();
  const Window& c = parts_.cbar.coefficients();
  const index_t lo = std::min({b.first, -(c.end() - 1), index_t{0}});
  const index_t hi = std::max({b.end() - 1, -c.first, index_t{0}});
  for (index_t l = lo; l <= hi; ++l)
    if (std::abs(parts_.bbar(l) - parts_.cbar(-l)) > tol) return false;
  if (!same_window(parts_.p, parts_.q, tol) || !same_window(parts_.xi, parts_.zeta, tol)) return false;
  return !parts_.banded || parts_.banded->is_symmetric(tol);
}

TpcOperator TpcOperator::scaled_shifted(double s, double shift) const {
  TpcParts p;
  p.m = parts_.m;
  p.a = parts_.a.scaled_shifted(s, shift);
  p.bbar = parts_.bbar.scaled_shifted(s, 0.0);
  p.cbar = parts_.cbar.scaled_shifted(s, 0.0);
  p.dbar = parts_.dbar.scaled_shifted(s, shift);
  auto scale = [s](Window w) {
    for (auto& v : w.values) v *= s;
    return w;
  };
  p.p = scale(parts_.p);
  p.q = scale(parts_.q);
  p.xi = scale(parts_.xi);
  p.zeta = scale(parts_.zeta);
  p.o = s * parts_.o + shift;
  if (parts_.banded) p.banded = parts_.banded->scaled(s);
  return TpcOperator(std::move(p));
}

std::size_t TpcOperator::stored_coefficients() const noexcept {
  std::size_t s = 1;
  for (const auto* t : {&parts_.a, &parts_.bbar, &parts_.cbar, &parts_.dbar}) s += t->coefficients().stored();
  for (const auto* w : {&parts_.p, &parts_.q, &parts_.xi, &parts_.zeta}) s += w->stored();
  if (parts_.banded) s += parts_.banded->stored();
  return s;
}

BlockVector tpc_matvec(const TpcOperator& op, const BlockVector& x) {
  if (x.size() != op.size()) throw ArgumentError("tpc_matvec: size mismatch");
  return BlockVector::from_flat(op.apply(x.flat()));
}

} // namespace tpcamg
