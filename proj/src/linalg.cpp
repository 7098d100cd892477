#include "solcrys/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace solcrys {
namespace linsys {

namespace {

IMat ident(size_t n) {
  IMat m(n, IVec(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

void swap_rows(IMat& m, size_t i, size_t j) { std::swap(m[i], m[j]); }
void swap_cols(IMat& m, size_t i, size_t j) {
  for (auto& row : m) std::swap(row[i], row[j]);
}
void negate_row(IMat& m, size_t i) {
  for (auto& e : m[i]) e = -e;
}
void negate_col(IMat& m, size_t j) {
  for (auto& row : m) row[j] = -row[j];
}
// row i += t * row j
void addmul_row(IMat& m, size_t i, size_t j, const Int& t) {
  for (size_t k = 0; k < m[i].size(); ++k) m[i][k] += t * m[j][k];
}
// col i += t * col j
void addmul_col(IMat& m, size_t i, size_t j, const Int& t) {
  for (auto& row : m) row[i] += t * row[j];
}

}  // namespace

SnfData smith(const IMat& m_in) {
  const size_t r = m_in.size();
  const size_t c = r ? m_in[0].size() : 0;
  SnfData out;
  out.u = ident(r);
  out.uinv = ident(r);
  out.v = ident(c);
  out.vinv = ident(c);
  IMat s = m_in;
  const size_t n = std::min(r, c);

  for (size_t k = 0; k < n; ++k) {
    // find a pivot
    size_t pi = k, pj = k;
    bool found = false;
    for (size_t i = k; i < r && !found; ++i)
      for (size_t j = k; j < c && !found; ++j)
        if (s[i][j] != 0) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    if (pi != k) {
      swap_rows(s, k, pi);
      swap_rows(out.u, k, pi);
      swap_cols(out.uinv, k, pi);
    }
    if (pj != k) {
      swap_cols(s, k, pj);
      swap_cols(out.v, k, pj);
      swap_rows(out.vinv, k, pj);
    }

    for (;;) {
      // clear column k below the pivot
      bool dirty = false;
      for (size_t i = k + 1; i < r; ++i) {
        while (s[i][k] != 0) {
          Int q = s[i][k] / s[k][k];
          if (q != 0) {
            addmul_row(s, i, k, -q);
            addmul_row(out.u, i, k, -q);
            addmul_col(out.uinv, k, i, q);
          }
          if (s[i][k] != 0) {  // remainder smaller than pivot: swap and repeat
            swap_rows(s, k, i);
            swap_rows(out.u, k, i);
            swap_cols(out.uinv, k, i);
            dirty = true;
          }
        }
      }
      // clear row k right of the pivot
      for (size_t j = k + 1; j < c; ++j) {
        while (s[k][j] != 0) {
          Int q = s[k][j] / s[k][k];
          if (q != 0) {
            addmul_col(s, j, k, -q);
            addmul_col(out.v, j, k, -q);
            addmul_row(out.vinv, k, j, q);
          }
          if (s[k][j] != 0) {
            swap_cols(s, k, j);
            swap_cols(out.v, k, j);
            swap_rows(out.vinv, k, j);
            dirty = true;
          }
        }
      }
      if (dirty) continue;  // row ops may have refilled the column
      // enforce divisibility of the remaining block by the pivot
      bool fixed = true;
      for (size_t i = k + 1; i < r && fixed; ++i)
        for (size_t j = k + 1; j < c && fixed; ++j)
          if (s[i][j] % s[k][k] != 0) {
            addmul_row(s, k, i, 1);
            addmul_row(out.u, k, i, 1);
            addmul_col(out.uinv, i, k, -1);
            fixed = false;
          }
      if (fixed) break;
    }
    if (s[k][k] < 0) {
      negate_row(s, k);
      negate_row(out.u, k);
      negate_col(out.uinv, k);
    }
  }

  out.diag.resize(n);
  out.rank = 0;
  for (size_t k = 0; k < n; ++k) {
    out.diag[k] = s[k][k];
    if (s[k][k] != 0) out.rank++;
  }
  return out;
}

std::vector<IVec> kernel_basis(const IMat& m) {
  const size_t c = m.empty() ? 0 : m[0].size();
  if (m.empty()) {  // no constraints: whole space
    std::vector<IVec> basis;
    return basis;
  }
  SnfData snf = smith(m);
  std::vector<IVec> basis;
  for (size_t j = 0; j < c; ++j) {
    bool free_coord = j >= snf.diag.size() || snf.diag[j] == 0;
    if (!free_coord) continue;
    IVec col(c);
    for (size_t i = 0; i < c; ++i) col[i] = snf.v[i][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

std::optional<AffineSolutions> solve(const IMat& m, const IVec& b) {
  const size_t r = m.size();
  const size_t c = r ? m[0].size() : 0;
  assert(b.size() == r);
  SnfData snf = smith(m);
  // s*y = u*b with x = v*y
  IVec ub(r, 0);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) ub[i] += snf.u[i][j] * b[j];
  IVec y(c, 0);
  for (size_t i = 0; i < r; ++i) {
    Int d = i < snf.diag.size() ? snf.diag[i] : Int(0);
    if (d == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % d != 0) return std::nullopt;
      y[i] = ub[i] / d;
    }
  }
  AffineSolutions sol;
  sol.x0.assign(c, 0);
  for (size_t i = 0; i < c; ++i)
    for (size_t j = 0; j < c; ++j) sol.x0[i] += snf.v[i][j] * y[j];
  sol.kernel = kernel_basis(m);
  return sol;
}

namespace {

Int det_small(const IMat& m) {
  size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Int total = 0;
  // cofactor expansion along the first row; n <= 4 here
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    IMat minor(n - 1, IVec(n - 1));
    for (size_t i = 1; i < n; ++i) {
      size_t cc = 0;
      for (size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        minor[i - 1][cc++] = m[i][k];
      }
    }
    Int term = m[0][j] * det_small(minor);
    if (j % 2) term = -term;
    total += term;
  }
  return total;
}

IMat adjugate_small(const IMat& m) {
  size_t n = m.size();
  IMat adj(n, IVec(n));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      IMat minor(n - 1, IVec(n - 1));
      size_t rr = 0;
      for (size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        size_t cc = 0;
        for (size_t c = 0; c < n; ++c) {
          if (c == j) continue;
          minor[rr][cc++] = m[r][c];
        }
        rr++;
      }
      Int cof = det_small(minor);
      if ((i + j) % 2) cof = -cof;
      adj[j][i] = cof;  // transpose of cofactor matrix
    }
  return adj;
}

}  // namespace

std::vector<IVec> points_in_box(const IVec& x0, const std::vector<IVec>& kernel,
                                const Int& bound) {
  std::vector<IVec> out;
  const size_t n = x0.size();
  auto in_box = [&](const IVec& x) {
    for (const Int& e : x)
      if (abs(e) > bound) return false;
    return true;
  };
  if (kernel.empty()) {
    if (in_box(x0)) out.push_back(x0);
    return out;
  }
  const size_t kd = kernel.size();
  // Coefficient bounds from the pseudo-inverse t = (K^T K)^{-1} K^T (x - x0):
  // exact since the kernel columns are independent.
  IMat g(kd, IVec(kd, 0));
  for (size_t i = 0; i < kd; ++i)
    for (size_t j = 0; j < kd; ++j)
      for (size_t k = 0; k < n; ++k) g[i][j] += kernel[i][k] * kernel[j][k];
  Int gdet = det_small(g);
  assert(gdet != 0);
  IMat gadj = adjugate_small(g);
  std::vector<Int> lo(kd), hi(kd);
  for (size_t j = 0; j < kd; ++j) {
    // row j of adj(G)*K^T, entries over denominator det(G)
    Int num = 0;
    for (size_t k = 0; k < n; ++k) {
      Int e = 0;
      for (size_t i = 0; i < kd; ++i) e += gadj[j][i] * kernel[i][k];
      num += abs(e) * (bound + abs(x0[k]));
    }
    Int m = num / abs(gdet) + 1;
    lo[j] = -m;
    hi[j] = m;
  }
  IVec t(kd, 0), x(n);
  auto rec = [&](auto&& self, size_t level) -> void {
    if (level == kd) {
      for (size_t k = 0; k < n; ++k) {
        x[k] = x0[k];
        for (size_t i = 0; i < kd; ++i) x[k] += t[i] * kernel[i][k];
      }
      if (in_box(x)) out.push_back(x);
      return;
    }
    for (Int v = lo[level]; v <= hi[level]; ++v) {
      t[level] = v;
      self(self, level + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<IVec> solve_in_box(const IMat& m, const IVec& b, const Int& bound) {
  auto sol = solve(m, b);
  if (!sol) return {};
  return points_in_box(sol->x0, sol->kernel, bound);
}

}  // namespace linsys

// --- public operations ----------------------------------------------------

namespace {

linsys::IMat to_imat(const Mat2& m) {
  return {{m.a, m.b}, {m.c, m.d}};
}

linsys::IMat columns_matrix(std::span<const Vec2> cols) {
  linsys::IMat m(2, linsys::IVec(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    m[0][j] = cols[j].x;
    m[1][j] = cols[j].y;
  }
  return m;
}

}  // namespace

SnfResult smith_normal_form(const Mat2& m) {
  auto snf = linsys::smith(to_imat(m));
  SnfResult r;
  r.u = Mat2(snf.uinv[0][0], snf.uinv[0][1], snf.uinv[1][0], snf.uinv[1][1]);
  r.v = Mat2(snf.vinv[0][0], snf.vinv[0][1], snf.vinv[1][0], snf.vinv[1][1]);
  r.s = Mat2(snf.diag[0], 0, 0, snf.diag[1]);
  return r;
}

Int AbelianQuotient::order() const {
  if (rank_deficiency > 0) return 0;
  Int n = 1;
  for (const Int& d : diag) n *= d;
  return n;
}

bool AbelianQuotient::in_ambient(const Vec2& x) const {
  if (amb_rank == 2) return true;
  auto sol = linsys::solve(columns_matrix(amb_basis), {x.x, x.y});
  return sol.has_value();
}

Vec2 AbelianQuotient::reduce(const Vec2& x) const {
  if (amb_rank == 0) {
    if (!x.is_zero())
      throw Error(Errc::ParamOutOfSpace, "vector outside trivial ambient lattice");
    return x;
  }
  auto sol = linsys::solve(columns_matrix(amb_basis), {x.x, x.y});
  if (!sol)
    throw Error(Errc::ParamOutOfSpace,
                "vector " + to_string(x) + " outside ambient sublattice");
  linsys::IVec c = sol->x0;  // unique: ambient basis has full column rank
  linsys::IVec w(amb_rank, 0);
  for (int i = 0; i < amb_rank; ++i)
    for (int j = 0; j < amb_rank; ++j) w[i] += u[i][j] * c[j];
  for (int i = 0; i < amb_rank; ++i)
    if (diag[i] > 0) {
      w[i] %= diag[i];
      if (w[i] < 0) w[i] += diag[i];
    }
  linsys::IVec cr(amb_rank, 0);
  for (int i = 0; i < amb_rank; ++i)
    for (int j = 0; j < amb_rank; ++j) cr[i] += uinv[i][j] * w[j];
  Vec2 rep{0, 0};
  for (int j = 0; j < amb_rank; ++j) rep += cr[j] * amb_basis[j];
  return rep;
}

bool AbelianQuotient::contains(const Vec2& x) const {
  if (!in_ambient(x)) return false;
  return reduce(x).is_zero();
}

AbelianQuotient lattice_quotient(std::span<const Vec2> generators,
                                 const std::optional<Mat2>& ambient) {
  AbelianQuotient q;
  if (ambient) {
    auto snf = linsys::smith(to_imat(*ambient));
    // lattice basis of the ambient from its SNF: uinv * diag(d_i) * e_i
    q.amb_rank = snf.rank;
    for (int i = 0; i < snf.rank; ++i) {
      Vec2 b{snf.diag[i] * snf.uinv[0][i], snf.diag[i] * snf.uinv[1][i]};
      q.amb_basis.push_back(b);
    }
  } else {
    q.amb_rank = 2;
    q.amb_basis = {Vec2{1, 0}, Vec2{0, 1}};
  }

  // generator coordinates relative to the ambient basis
  linsys::IMat coords(q.amb_rank, linsys::IVec(generators.size(), 0));
  linsys::IMat basis_cols = columns_matrix(q.amb_basis);
  for (size_t j = 0; j < generators.size(); ++j) {
    auto sol = linsys::solve(basis_cols, {generators[j].x, generators[j].y});
    if (!sol)
      throw Error(Errc::InconsistentAux,
                  "quotient generator " + to_string(generators[j]) +
                      " lies outside the ambient sublattice");
    for (int i = 0; i < q.amb_rank; ++i) coords[i][j] = sol->x0[i];
  }

  if (q.amb_rank == 0) {
    q.coset_reps = {Vec2{0, 0}};
    return q;
  }

  auto snf = linsys::smith(coords);
  q.u = snf.u;
  q.uinv = snf.uinv;
  q.diag.assign(q.amb_rank, 0);
  for (size_t i = 0; i < snf.diag.size() && i < static_cast<size_t>(q.amb_rank); ++i)
    q.diag[i] = snf.diag[i];
  for (int i = 0; i < q.amb_rank; ++i) {
    if (q.diag[i] == 0)
      q.rank_deficiency++;
    else if (q.diag[i] > 1)
      q.invariant_factors.push_back(q.diag[i]);
  }
  if (q.rank_deficiency == 0) {
    // enumerate representatives in transform-coordinate lexicographic order
    std::vector<linsys::IVec> ws{{}};
    for (int i = 0; i < q.amb_rank; ++i) {
      std::vector<linsys::IVec> next;
      for (const auto& w : ws)
        for (Int r = 0; r < q.diag[i]; ++r) {
          auto w2 = w;
          w2.push_back(r);
          next.push_back(std::move(w2));
        }
      ws = std::move(next);
    }
    for (const auto& w : ws) {
      linsys::IVec c(q.amb_rank, 0);
      for (int i = 0; i < q.amb_rank; ++i)
        for (int j = 0; j < q.amb_rank; ++j) c[i] += q.uinv[i][j] * w[j];
      Vec2 rep{0, 0};
      for (int j = 0; j < q.amb_rank; ++j) rep += c[j] * q.amb_basis[j];
      q.coset_reps.push_back(rep);
    }
  }
  return q;
}

bool lattice_membership(const Vec2& x, std::span<const Vec2> generators) {
  return linsys::solve(columns_matrix(generators), {x.x, x.y}).has_value();
}

std::vector<Mat2> solve_intertwiner(const Mat2& a, int sign, const Int& bound) {
  if (a.det() == 0)
    throw Error(Errc::BadInput, "intertwiner base matrix must be invertible");
  // Linear conditions: X*a = a*X (sign +1) or a*X*a = X (sign -1, the
  // denominator-free form of X*a = a^{-1}*X).
  auto apply = [&](const Mat2& x) -> Mat2 {
    if (sign > 0) return x * a - a * x;
    return a * x * a - x;  // denominator-free form of X*a = a^{-1}*X
  };
  linsys::IMat sys(4, linsys::IVec(4));
  const Mat2 basis[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  for (int j = 0; j < 4; ++j) {
    Mat2 img = apply(basis[j]);
    sys[0][j] = img.a;
    sys[1][j] = img.b;
    sys[2][j] = img.c;
    sys[3][j] = img.d;
  }
  auto points = linsys::solve_in_box(sys, {0, 0, 0, 0}, bound);
  std::vector<Mat2> out;
  for (const auto& p : points) {
    Mat2 x(p[0], p[1], p[2], p[3]);
    if (x.is_unimodular()) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), [](const Mat2& l, const Mat2& r) {
    return lex_less(l, r);
  });
  return out;
}

std::vector<SquareRoot> integral_square_roots(const Mat2& a) {
  if (a.trace() <= 2 || a.det() != 1)
    throw Error(Errc::BadInput, "square roots expect det 1 and trace > 2");
  std::vector<SquareRoot> out;
  for (int d : {1, -1}) {
    Int c = a.trace() + 2 * d;
    if (c <= 0)
      throw Error(Errc::BadInput, "degenerate trace in square root search");
    Int s = sqrt(c);
    if (s * s != c) continue;
    Mat2 base = a + Mat2::scalar(d);
    if (base.a % s != 0 || base.b % s != 0 || base.c % s != 0 || base.d % s != 0)
      continue;
    Mat2 n(base.a / s, base.b / s, base.c / s, base.d / s);
    for (const Mat2& cand : {n, -n}) {
      if (cand * cand != a)
        throw Error(Errc::BadInput, "square root parametrization broke");
      out.push_back({cand, d});
    }
  }
  std::sort(out.begin(), out.end(), [](const SquareRoot& l, const SquareRoot& r) {
    if (l.det_n != r.det_n) return l.det_n > r.det_n;
    return lex_less(l.n, r.n);
  });
  return out;
}

std::vector<Mat2> reversing_matrices(const Mat2& a, int want_det, const Int& bound) {
  std::vector<Mat2> out;
  for (const Mat2& m : solve_intertwiner(a, -1, bound)) {
    if (m.trace() != 0) continue;
    if (m.det() != want_det) continue;
    Mat2 mam = m * a * m.inverse();
    if (mam != a.inverse()) continue;
    if (want_det == 1 && m * m != -Mat2::identity())
      throw Error(Errc::BadInput, "traceless det 1 reverser must square to -I");
    out.push_back(m);
  }
  return out;
}

std::vector<Vec2> kernel_vectors(const Mat2& m) {
  auto basis = linsys::kernel_basis(to_imat(m));
  std::vector<Vec2> out;
  for (const auto& b : basis) out.push_back({b[0], b[1]});
  return out;
}

std::vector<Vec2> lattice_intersection(std::span<const Vec2> gens1,
                                       std::span<const Vec2> gens2) {
  // x = B1*s = B2*t: kernel of [B1 | -B2] gives the coefficient pairs.
  linsys::IMat sys(2, linsys::IVec(gens1.size() + gens2.size()));
  for (size_t j = 0; j < gens1.size(); ++j) {
    sys[0][j] = gens1[j].x;
    sys[1][j] = gens1[j].y;
  }
  for (size_t j = 0; j < gens2.size(); ++j) {
    sys[0][gens1.size() + j] = -gens2[j].x;
    sys[1][gens1.size() + j] = -gens2[j].y;
  }
  std::vector<Vec2> raw;
  for (const auto& k : linsys::kernel_basis(sys)) {
    Vec2 x{0, 0};
    for (size_t j = 0; j < gens1.size(); ++j) x += k[j] * gens1[j];
    if (!x.is_zero()) raw.push_back(x);
  }
  // reduce to an honest basis of the span
  auto snf = linsys::smith(columns_matrix(raw));
  std::vector<Vec2> out;
  for (int i = 0; i < snf.rank; ++i)
    out.push_back(Vec2{snf.diag[i] * snf.uinv[0][i], snf.diag[i] * snf.uinv[1][i]});
  return out;
}

}  // namespace solcrys
