#include "hyperred/quadspace.hpp"

#include "hyperred/errors.hpp"

#include <functional>

namespace hyperred {

QMat J_matrix(int n) {
    QMat J(n, n);
    for (int i = 0; i < n; ++i) J(i, n - 1 - i) = 1;
    return J;
}

bool is_self_adjoint(const QMat& T, const QMat& G) {
    if (T.rows != G.rows || T.cols != G.cols) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
    return G * T == T.transpose() * G;
}

QMat j_adjoint(const QMat& T) {
    int n = T.rows;
    QMat A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = T(n - 1 - j, n - 1 - i);
    return A;
}

Rat tau(const IntPoly& f, const RatPoly& p) {
    RatPoly r = p % f.to_rat();
    return r.coeff(f.deg() - 1);
}

QMat tau_gram(const IntPoly& f, const RatPoly& U) {
    RatPoly F = f.to_rat();
    RatPoly h = invmod(U % F, F);
    int n = f.deg();
    std::vector<Rat> t(2 * n - 1);
    RatPoly cur = h;
    for (int k = 0; k < 2 * n - 1; ++k) {
        t[k] = cur.coeff(n - 1);
        cur = (cur * RatPoly::x()) % F;
    }
    QMat G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = t[i + j];
    return G;
}

QMat mulx_matrix(const IntPoly& f) {
    int n = f.deg();
    QMat M(n, n);
    for (int j = 0; j + 1 < n; ++j) M(j + 1, j) = 1;
    for (int i = 0; i < n; ++i) M(i, n - 1) = Rat(-f.c[i]);
    return M;
}

std::pair<int, int> signature(const QMat& G) {
    // All eigenvalues are real, so Descartes' rule of signs is exact.
    RatPoly cp = charpoly(G);
    int z = 0;
    while (z <= cp.deg() && cp.coeff(z) == 0) ++z;
    auto changes = [&](bool negate) {
        int cnt = 0, last = 0;
        for (int k = z; k <= cp.deg(); ++k) {
            int s = sgn(cp.coeff(k));
            if (negate && (k % 2)) s = -s;
            if (s == 0) continue;
            if (last != 0 && s != last) ++cnt;
            last = s;
        }
        return cnt;
    };
    return {changes(false), changes(true)};
}

namespace {

Rat form(const QMat& G, const ZVec& x, const ZVec& y) {
    Rat s = 0;
    for (int i = 0; i < G.rows; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < G.cols; ++j)
            if (y[j] != 0) s += Rat(x[i] * y[j]) * G(i, j);
    }
    return s;
}

ZVec mat_vec(const ZMat& M, const ZVec& v) {
    ZVec r(M.rows, Int(0));
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j) r[i] += M(i, j) * v[j];
    return r;
}

// Lexicographically first primitive isotropic vector (first nonzero entry positive)
// with entries bounded by B, in the coordinates of G.
std::optional<ZVec> isotropic_in_box(const QMat& G, long B) {
    int k = G.rows;
    std::vector<long> x(k, -B);
    while (true) {
        int lead = 0;
        while (lead < k && x[lead] == 0) ++lead;
        if (lead < k && x[lead] > 0) {
            ZVec v(k);
            for (int i = 0; i < k; ++i) v[i] = x[i];
            if (form(G, v, v) == 0 && is_primitive(v)) return v;
        }
        int i = k - 1;
        while (i >= 0 && x[i] == B) {
            x[i] = -B;
            --i;
        }
        if (i < 0) break;
        ++x[i];
    }
    return std::nullopt;
}

ZVec find_isotropic(const QMat& G) {
    int k = G.rows;
    auto il = lll_indefinite(G);
    if (il.isotropic) return *il.isotropic;
    ZMat C = il.C;
    QMat Gr = to_q(C).transpose() * G * to_q(C);
    for (long B = 1; B <= (1L << 20); B *= 2) {
        double cells = 1;
        for (int i = 0; i < k; ++i) cells *= double(2 * B + 1);
        if (cells > 2e7) break;
        if (auto v = isotropic_in_box(Gr, B)) return mat_vec(C, *v);
    }
    throw Error(ErrorKind::NotSplit, "no isotropic vector found");
}

// Integer w with (v, w)_G = 1 for primitive v in a unimodular lattice.
ZVec dual_partner(const QMat& G, const ZVec& v) {
    int k = G.rows;
    ZVec gv(k);
    for (int i = 0; i < k; ++i) {
        Rat s = 0;
        for (int j = 0; j < k; ++j) s += G(i, j) * Rat(v[j]);
        gv[i] = s.get_num();
    }
    // extended gcd over the entries
    ZVec w(k, Int(0));
    Int g = 0;
    for (int i = 0; i < k; ++i) {
        if (gv[i] == 0) continue;
        Int ng, s, t;
        mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), gv[i].get_mpz_t());
        for (auto& e : w) e *= s;
        w[i] += t;
        g = ng;
    }
    if (g != 1) throw Error(ErrorKind::NotUnimodular, "vector is not primitive in a unimodular lattice");
    return w;
}

} // namespace

ZMat normalize_unimodular(const QMat& gram, const std::optional<ZVec>& hint) {
    int n = gram.rows;
    if (n % 2 == 0 || gram.cols != n) throw Error(ErrorKind::NotSplit, "rank must be odd");
    if (!is_integral(gram) || gram.transpose() != gram)
        throw Error(ErrorKind::NotUnimodular, "Gram matrix is not integral and symmetric");
    Rat d = det(gram);
    if (d != 1 && d != -1) throw Error(ErrorKind::NotUnimodular, "determinant is not +-1");
    int g = (n - 1) / 2;
    auto sig = signature(gram);
    if (sig.first != g + 1 || sig.second != g) throw Error(ErrorKind::NotSplit, "signature is not (g+1, g)");

    ZMat basis = ZMat::identity(n); // current complement, columns in lattice coords
    std::vector<ZVec> vs, ws;
    bool first = true;
    while (basis.cols > 1) {
        QMat Qb = to_q(basis);
        QMat Gc = Qb.transpose() * gram * Qb;
        int k = Gc.rows;
        ZVec v;
        if (first && hint) {
            // coordinates of the hint (basis is the identity here)
            v = *hint;
            if (form(Gc, v, v) != 0 || !is_primitive(v)) throw Error(ErrorKind::InvalidInput, "hint is not primitive isotropic");
        } else {
            v = find_isotropic(Gc);
        }
        first = false;
        ZVec w = dual_partner(Gc, v);
        // orthogonal complement of <v, w>
        auto complement = [&](const ZVec& a, const ZVec& b) {
            ZMat A(k, 2);
            for (int i = 0; i < k; ++i) {
                Rat s = 0, t = 0;
                for (int j = 0; j < k; ++j) {
                    s += Gc(i, j) * Rat(a[j]);
                    t += Gc(i, j) * Rat(b[j]);
                }
                A(i, 0) = s.get_num();
                A(i, 1) = t.get_num();
            }
            return integer_left_kernel(A).transpose(); // k x (k-2)
        };
        Rat ww = form(Gc, w, w);
        if (ww.get_num() % 2 != 0) {
            ZMat comp = complement(v, w);
            bool fixed = false;
            for (int j = 0; j < comp.cols && !fixed; ++j) {
                ZVec u = comp.col(j);
                if (form(Gc, u, u).get_num() % 2 != 0) {
                    for (int i = 0; i < k; ++i) w[i] += u[i];
                    fixed = true;
                }
            }
            if (!fixed) throw Error(ErrorKind::NotSplit, "even complement");
            ww = form(Gc, w, w);
        }
        Int h = ww.get_num() / 2;
        for (int i = 0; i < k; ++i) w[i] -= h * v[i];
        ZMat comp = complement(v, w);
        vs.push_back(mat_vec(basis, v));
        ws.push_back(mat_vec(basis, w));
        ZMat nb(n, comp.cols);
        for (int j = 0; j < comp.cols; ++j) nb.set_col(j, mat_vec(basis, comp.col(j)));
        basis = nb;
    }
    ZVec z = basis.col(0);
    Rat zz = form(gram, z, z);
    if (zz == -1) throw Error(ErrorKind::NotSplit, "middle vector has norm -1");
    if (zz != 1) throw Error(ErrorKind::NotUnimodular, "middle vector is not a unit");

    ZMat B(n, n);
    for (int i = 0; i < g; ++i) {
        B.set_col(i, ws[i]);
        B.set_col(n - 1 - i, vs[i]);
    }
    B.set_col(g, z);
    QMat Bq = to_q(B);
    if (det(Bq) == -1) {
        ZVec c0 = B.col(0), c1 = B.col(n - 1);
        B.set_col(0, c1);
        B.set_col(n - 1, c0);
        Bq = to_q(B);
    }
    QMat J = J_matrix(n);
    if (Bq.transpose() * gram * Bq != J) throw Error(ErrorKind::NotUnimodular, "normalisation failed verification");
    return to_z(inverse(Bq));
}

ZMat adapted_hyperbolic_basis(const QMat& gram, const QMat& F) {
    int n = gram.rows;
    if (n % 2 == 0 || F.rows != n || F.cols != n) throw Error(ErrorKind::BadFlag, "flag has the wrong size");
    if (det(F) == 0) throw Error(ErrorKind::BadFlag, "flag vectors are dependent");
    int g = (n - 1) / 2;
    QMat GF = F.transpose() * gram * F;
    for (int a = 0; a < n; ++a)
        for (int b = 0; a + b + 2 <= n; ++b)
            if (GF(a, b) != 0) throw Error(ErrorKind::BadFlag, "F_i is not orthogonal to F_{n-i}");

    // Z-basis adapted to the flag: upper-triangular HNF of F^{-1} Z^n.
    QMat Bc = inverse(F);
    Int d = denominator(Bc);
    ZMat Z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Z(j, n - 1 - i) = Rat(Bc(i, j) * Rat(d)).get_num();
    // rows of Z are generators with coordinates reversed, so row HNF gives
    // lower-triangular generators in the original order
    auto h = hnf_rows(Z);
    QMat H(n, n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) H(n - 1 - i, n - 1 - k) = make_rat(h.H(k, i), d);
    // column k of H now has support in coordinates 0..k
    QMat P = F * H;
    ZMat Pz = to_z(P);
    // reverse: position k holds the vector spanning F_{n-k} modulo F_{n-k-1}
    ZMat b(n, n);
    for (int k = 0; k < n; ++k) b.set_col(k, Pz.col(n - 1 - k));

    auto gramb = [&]() { return to_q(b).transpose() * gram * to_q(b); };
    auto addcol = [&](int dst, int src, const Int& c) {
        if (c == 0) return;
        for (int i = 0; i < n; ++i) b(i, dst) += c * b(i, src);
    };
    QMat A = gramb();
    for (int k = 0; k < n; ++k) {
        Rat e = A(k, n - 1 - k);
        if (e != 1 && e != -1) throw Error(ErrorKind::NotUnimodular, "anti-diagonal entry is not a unit");
    }
    for (int k = 0; k < g; ++k)
        if (A(k, n - 1 - k) == -1)
            for (int i = 0; i < n; ++i) b(i, k) = -b(i, k);
    A = gramb();
    if (A(g, g) != 1) throw Error(ErrorKind::NotSplit, "middle entry is -1");

    // make the (-,+) block the anti-identity: A13 = Psi L, new b_+ = b_+ L^{-1}
    QMat L(g, g);
    for (int k = 0; k < g; ++k)
        for (int j = 0; j < g; ++j) L(k, j) = A(g - 1 - k, g + 1 + j);
    ZMat Linv = to_z(inverse(L));
    {
        ZMat old = b;
        for (int j = 0; j < g; ++j)
            for (int i = 0; i < n; ++i) {
                Int s = 0;
                for (int l = 0; l < g; ++l) s += old(i, g + 1 + l) * Linv(l, j);
                b(i, g + 1 + j) = s;
            }
    }
    A = gramb();
    // clear (-,0)
    for (int k = 0; k < g; ++k) addcol(k, g, -A(k, g).get_num());
    A = gramb();

    // B + y y^t with y = diag(B) mod 2 has even diagonal
    ZVec y(g);
    for (int k = 0; k < g; ++k) {
        Int bkk = A(k, k).get_num();
        y[k] = (bkk % 2 != 0) ? Int(1) : Int(0);
    }
    QMat S(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) S(i, j) = A(i, j) + Rat(y[i] * y[j]);
    for (int i = 0; i < g; ++i)
        if (S(i, i).get_num() % 2 != 0) throw Error(ErrorKind::InvalidInput, "B + y y^t has an odd diagonal entry");
    // K = Psi C with K + K^t = -S
    ZMat K(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            if (j > i) K(i, j) = -S(i, j).get_num();
            else if (i == j) K(i, j) = -S(i, i).get_num() / 2;
        }
    ZMat C(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) C(i, j) = K(g - 1 - i, j);
    // beta = -Psi y
    ZVec beta(g);
    for (int i = 0; i < g; ++i) beta[i] = -y[g - 1 - i];

    ZMat old = b;
    for (int i = 0; i < n; ++i) {
        Int s = old(i, g);
        for (int l = 0; l < g; ++l) s += beta[l] * old(i, g + 1 + l);
        b(i, g) = s;
    }
    for (int k = 0; k < g; ++k)
        for (int i = 0; i < n; ++i) {
            Int s = old(i, k) + y[k] * old(i, g);
            for (int l = 0; l < g; ++l) s += C(l, k) * old(i, g + 1 + l);
            b(i, k) = s;
        }
    if (gramb() != J_matrix(n)) throw Error(ErrorKind::InvalidInput, "adapted basis failed verification");
    return b;
}

ZMat adapted_hyperbolic_basis(const QMat& F) { return adapted_hyperbolic_basis(J_matrix(F.rows), F); }

int centralizer_dimension(const QMat& T) {
    int n = T.rows;
    // X T - T X = 0 as a linear system in the n^2 entries of X
    QMat A(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int row = i * n + j;
            for (int k = 0; k < n; ++k) {
                A(row, i * n + k) += T(k, j);
                A(row, k * n + j) -= T(i, k);
            }
        }
    return n * n - rank(A);
}

} // namespace hyperred
