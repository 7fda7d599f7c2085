#ifndef MACKEYALG_ZMOD_SMITH_HPP
#define MACKEYALG_ZMOD_SMITH_HPP

#include <algorithm>

#include "mackeyalg/zmod/matrix.hpp"

namespace mackeyalg::zmod {

/// D = U * M * V with U, V unimodular and D diagonal, d_0 | d_1 | ... with
/// nonnegative entries and zeros last. Transform matrices are only filled in
/// when requested; the untracked ones are left empty.
struct SmithForm {
  IntMatrix D;
  IntMatrix U, U_inv;
  IntMatrix V, V_inv;

  std::size_t rank() const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
      if (D(i, i) != 0) ++r;
    return r;
  }
  IntVector diagonal() const {
    IntVector d(std::min(D.rows(), D.cols()));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = D(i, i);
    return d;
  }
};

inline SmithForm smith_normal_form(const IntMatrix& m, bool track_rows = true, bool track_cols = true) {
  SmithForm s;
  s.D = m;
  IntMatrix& D = s.D;
  const std::size_t nr = m.rows(), nc = m.cols();
  if (track_rows) {
    s.U = IntMatrix::identity(nr);
    s.U_inv = IntMatrix::identity(nr);
  }
  if (track_cols) {
    s.V = IntMatrix::identity(nc);
    s.V_inv = IntMatrix::identity(nc);
  }

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    D.swap_rows(a, b);
    if (track_rows) {
      s.U.swap_rows(a, b);
      s.U_inv.swap_cols(a, b);
    }
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    D.swap_cols(a, b);
    if (track_cols) {
      s.V.swap_cols(a, b);
      s.V_inv.swap_rows(a, b);
    }
  };
  // row[dst] += c * row[src]
  auto add_row = [&](std::size_t dst, std::size_t src, const Integer& c) {
    if (c == 0) return;
    D.add_row(dst, src, c);
    if (track_rows) {
      s.U.add_row(dst, src, c);
      s.U_inv.add_col(src, dst, -c);
    }
  };
  // col[dst] += c * col[src]
  auto add_col = [&](std::size_t dst, std::size_t src, const Integer& c) {
    if (c == 0) return;
    D.add_col(dst, src, c);
    if (track_cols) {
      s.V.add_col(dst, src, c);
      s.V_inv.add_row(src, dst, -c);
    }
  };
  auto negate_row = [&](std::size_t r) {
    D.negate_row(r);
    if (track_rows) {
      s.U.negate_row(r);
      s.U_inv.negate_col(r);
    }
  };

  const std::size_t lim = std::min(nr, nc);
  for (std::size_t t = 0; t < lim; ++t) {
    // smallest nonzero entry of the remaining block
    bool found = false;
    std::size_t pi = t, pj = t;
    Integer best;
    for (std::size_t i = t; i < nr; ++i)
      for (std::size_t j = t; j < nc; ++j) {
        if (D(i, j) == 0) continue;
        Integer a = abs(D(i, j));
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (;;) {
      // bring the smallest entry of row t / column t to the corner
      std::size_t bi = t, bj = t;
      Integer bv = abs(D(t, t));
      for (std::size_t i = t + 1; i < nr; ++i)
        if (D(i, t) != 0 && abs(D(i, t)) < bv) {
          bv = abs(D(i, t));
          bi = i;
          bj = t;
        }
      for (std::size_t j = t + 1; j < nc; ++j)
        if (D(t, j) != 0 && abs(D(t, j)) < bv) {
          bv = abs(D(t, j));
          bi = t;
          bj = j;
        }
      swap_rows(t, bi);
      swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < nr; ++i) {
        if (D(i, t) == 0) continue;
        add_row(i, t, -(D(i, t) / D(t, t)));
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < nc; ++j) {
        if (D(t, j) == 0) continue;
        add_col(j, t, -(D(t, j) / D(t, t)));
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < nr && divides; ++i)
        for (std::size_t j = t + 1; j < nc; ++j)
          if (D(i, j) % D(t, t) != 0) {
            add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) negate_row(t);
  }
  return s;
}

}  // namespace mackeyalg::zmod

#endif  // MACKEYALG_ZMOD_SMITH_HPP
