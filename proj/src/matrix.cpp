#include "hyperred/matrix.hpp"

#include "hyperred/errors.hpp"

#include <sstream>

namespace hyperred {

QMat to_q(const ZMat& m) {
    QMat q(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) q.a[i] = Rat(m.a[i]);
    return q;
}

ZMat to_z(const QMat& m) {
    ZMat z(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) {
        if (m.a[i].get_den() != 1) throw Error(ErrorKind::InvalidInput, "matrix entry is not an integer");
        z.a[i] = m.a[i].get_num();
    }
    return z;
}

bool is_integral(const QMat& m) {
    for (auto& x : m.a)
        if (x.get_den() != 1) return false;
    return true;
}

Int denominator(const QMat& m) {
    Int d = 1;
    for (auto& x : m.a) d = lcm(d, x.get_den());
    return d;
}

Rat det(const QMat& m0) {
    if (m0.rows != m0.cols) throw Error(ErrorKind::InvalidInput, "det of a non-square matrix");
    QMat m = m0;
    int n = m.rows;
    Rat d = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int k = 0; k < n; ++k) std::swap(m(piv, k), m(c, k));
            d = -d;
        }
        d *= m(c, c);
        for (int r = c + 1; r < n; ++r) {
            if (m(r, c) == 0) continue;
            Rat t = m(r, c) / m(c, c);
            for (int k = c; k < n; ++k) m(r, k) -= t * m(c, k);
        }
    }
    return d;
}

QMat inverse(const QMat& m0) {
    int n = m0.rows;
    if (n != m0.cols) throw Error(ErrorKind::InvalidInput, "inverse of a non-square matrix");
    QMat m = m0, inv = QMat::identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw Error(ErrorKind::InvalidInput, "singular matrix");
        if (piv != c)
            for (int k = 0; k < n; ++k) {
                std::swap(m(piv, k), m(c, k));
                std::swap(inv(piv, k), inv(c, k));
            }
        Rat p = m(c, c);
        for (int k = 0; k < n; ++k) {
            m(c, k) /= p;
            inv(c, k) /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0) continue;
            Rat t = m(r, c);
            for (int k = 0; k < n; ++k) {
                m(r, k) -= t * m(c, k);
                inv(r, k) -= t * inv(c, k);
            }
        }
    }
    return inv;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMat& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int k = 0; k < m.cols; ++k) std::swap(m(piv, k), m(r, k));
        Rat p = m(r, c);
        for (int k = 0; k < m.cols; ++k) m(r, k) /= p;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat t = m(i, c);
            for (int k = 0; k < m.cols; ++k) m(i, k) -= t * m(r, k);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

int rank(const QMat& m0) {
    QMat m = m0;
    return (int)rref(m).size();
}

QMat nullspace(const QMat& m0) {
    QMat m = m0;
    auto piv = rref(m);
    std::vector<bool> is_piv(m.cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<int> free;
    for (int c = 0; c < m.cols; ++c)
        if (!is_piv[c]) free.push_back(c);
    QMat ns(m.cols, (int)free.size());
    for (size_t k = 0; k < free.size(); ++k) {
        ns(free[k], k) = 1;
        for (size_t r = 0; r < piv.size(); ++r) ns(piv[r], k) = -m(r, free[k]);
    }
    return ns;
}

Rat trace(const QMat& m) {
    Rat t = 0;
    for (int i = 0; i < m.rows; ++i) t += m(i, i);
    return t;
}

RatPoly charpoly(const QMat& A) {
    // Faddeev-LeVerrier
    int n = A.rows;
    std::vector<Rat> c(n + 1);
    c[n] = 1;
    QMat M(n, n);
    for (int k = 1; k <= n; ++k) {
        QMat AM = A * M;
        for (int i = 0; i < n; ++i) AM(i, i) += c[n - k + 1];
        M = AM;
        c[n - k] = -trace(A * M) / Rat(k);
    }
    return RatPoly(c);
}

Rat dot(const QVec& a, const QVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat bilinear(const QMat& G, const QVec& x, const QVec& y) { return dot(x, G * y); }

QMat hstack(const QMat& a, const QMat& b) {
    int rows = a.cols ? a.rows : b.rows;
    QMat m(rows, a.cols + b.cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < a.cols; ++j) m(i, j) = a(i, j);
        for (int j = 0; j < b.cols; ++j) m(i, a.cols + j) = b(i, j);
    }
    return m;
}

QMat column_block(const QMat& m, int j0, int j1) {
    QMat r(m.rows, j1 - j0);
    for (int i = 0; i < m.rows; ++i)
        for (int j = j0; j < j1; ++j) r(i, j - j0) = m(i, j);
    return r;
}

HnfResult hnf_rows(const ZMat& A) {
    int m = A.rows, n = A.cols;
    HnfResult res;
    res.H = A;
    res.U = ZMat::identity(m);
    ZMat& H = res.H;
    ZMat& U = res.U;
    auto combine = [&](ZMat& X, int r, int i, const Int& s, const Int& t, const Int& u, const Int& v) {
        // row r <- s row r + t row i ; row i <- u row r + v row i
        for (int k = 0; k < X.cols; ++k) {
            Int a = X(r, k), b = X(i, k);
            X(r, k) = s * a + t * b;
            X(i, k) = u * a + v * b;
        }
    };
    int r = 0;
    for (int j = 0; j < n && r < m; ++j) {
        for (int i = r + 1; i < m; ++i) {
            if (H(i, j) == 0) continue;
            Int a = H(r, j), b = H(i, j), g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            Int u = -b / g, v = a / g;
            combine(H, r, i, s, t, u, v);
            combine(U, r, i, s, t, u, v);
        }
        if (H(r, j) == 0) continue;
        if (H(r, j) < 0) {
            for (int k = 0; k < n; ++k) H(r, k) = -H(r, k);
            for (int k = 0; k < m; ++k) U(r, k) = -U(r, k);
        }
        for (int i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), H(i, j).get_mpz_t(), H(r, j).get_mpz_t());
            if (q == 0) continue;
            for (int k = 0; k < n; ++k) H(i, k) -= q * H(r, k);
            for (int k = 0; k < m; ++k) U(i, k) -= q * U(r, k);
        }
        ++r;
    }
    res.rank = r;
    return res;
}

QMat lattice_basis(const QMat& gens) {
    int n = gens.rows;
    Int d = denominator(gens);
    ZMat Z(gens.cols, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < gens.cols; ++j) {
            Rat x = gens(i, j) * Rat(d);
            Z(j, i) = x.get_num();
        }
    auto h = hnf_rows(Z);
    QMat B(n, h.rank);
    for (int k = 0; k < h.rank; ++k)
        for (int i = 0; i < n; ++i) B(i, k) = make_rat(h.H(k, i), d);
    return B;
}

QMat lattice_sum(const QMat& a, const QMat& b) { return lattice_basis(hstack(a, b)); }

QMat lattice_dual(const QMat& a) { return inverse(a).transpose(); }

QMat lattice_intersection(const QMat& a, const QMat& b) {
    return lattice_basis(lattice_dual(lattice_sum(lattice_dual(a), lattice_dual(b))));
}

ZMat integer_left_kernel(const ZMat& A) {
    auto h = hnf_rows(A);
    ZMat K(A.rows - h.rank, A.rows);
    for (int i = h.rank; i < A.rows; ++i)
        for (int k = 0; k < A.rows; ++k) K(i - h.rank, k) = h.U(i, k);
    return K;
}

ZMat sublattice_intersection(const ZMat& a, const ZMat& b) {
    int n = a.rows;
    // columns z = (x, y) with a x - b y = 0
    ZMat C(a.cols + b.cols, n);
    for (int j = 0; j < a.cols; ++j)
        for (int i = 0; i < n; ++i) C(j, i) = a(i, j);
    for (int j = 0; j < b.cols; ++j)
        for (int i = 0; i < n; ++i) C(a.cols + j, i) = -b(i, j);
    ZMat K = integer_left_kernel(C);
    QMat gens(n, K.rows);
    for (int k = 0; k < K.rows; ++k)
        for (int i = 0; i < n; ++i) {
            Int s = 0;
            for (int j = 0; j < a.cols; ++j) s += a(i, j) * K(k, j);
            gens(i, k) = Rat(s);
        }
    if (K.rows == 0) return ZMat(n, 0);
    return to_z(lattice_basis(gens));
}

ZMat saturation(const ZMat& a) {
    ZMat K = integer_left_kernel(a); // rows orthogonal to the columns
    ZMat KT = K.transpose();         // n x (#rows of K)
    ZMat S = integer_left_kernel(KT);
    return S.transpose();
}

QMat canonical_basis(const QMat& basis) { return lattice_basis(basis); }

bool same_lattice(const QMat& a, const QMat& b) { return canonical_basis(a) == canonical_basis(b); }

bool lattice_contains(const QMat& a, const QMat& b) { return is_integral(inverse(a) * b); }

QVec coordinates(const QMat& a, const QVec& v) { return inverse(a) * v; }

Int gcd_of(const ZVec& v) {
    Int g = 0;
    for (auto& x : v) g = gcd(g, x);
    return g;
}

bool is_primitive(const ZVec& v) { return gcd_of(v) == 1; }

namespace {

Int round_rat(const Rat& q) {
    // floor(q + 1/2)
    Int num = 2 * q.get_num() + q.get_den(), den = 2 * q.get_den(), r;
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return r;
}

} // namespace

ZMat lll_gram(const QMat& G0) {
    int n = G0.rows;
    ZMat C = ZMat::identity(n);
    QMat G = G0;
    QMat mu(n, n);
    std::vector<Rat> B(n);
    auto gso = [&]() {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < i; ++j) {
                Rat s = G(i, j);
                for (int k = 0; k < j; ++k) s -= mu(j, k) * mu(i, k) * B[k];
                mu(i, j) = s / B[j];
            }
            Rat s = G(i, i);
            for (int k = 0; k < i; ++k) s -= mu(i, k) * mu(i, k) * B[k];
            B[i] = s;
        }
    };
    auto sub = [&](int k, int j, const Int& q) { // b_k -= q b_j
        for (int i = 0; i < n; ++i) C(i, k) -= q * C(i, j);
        Rat qq(q);
        for (int i = 0; i < n; ++i) G(i, k) -= qq * G(i, j);
        for (int i = 0; i < n; ++i) G(k, i) -= qq * G(j, i);
    };
    auto swap = [&](int k, int j) {
        for (int i = 0; i < n; ++i) std::swap(C(i, k), C(i, j));
        for (int i = 0; i < n; ++i) std::swap(G(i, k), G(i, j));
        for (int i = 0; i < n; ++i) std::swap(G(k, i), G(j, i));
    };
    gso();
    int k = 1;
    const Rat delta(3, 4);
    while (k < n) {
        for (int j = k - 1; j >= 0; --j) {
            Int q = round_rat(mu(k, j));
            if (q != 0) {
                sub(k, j, q);
                gso();
            }
        }
        if (B[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * B[k - 1]) {
            ++k;
        } else {
            swap(k, k - 1);
            gso();
            k = std::max(k - 1, 1);
        }
    }
    return C;
}

IndefiniteLll lll_indefinite(const QMat& G0) {
    int n = G0.rows;
    IndefiniteLll res;
    res.C = ZMat::identity(n);
    ZMat& C = res.C;
    QMat G = G0;
    QMat mu(n, n);
    std::vector<Rat> B(n);
    // returns the first index with a vanishing Gram-Schmidt norm, or -1
    auto gso = [&]() {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < i; ++j) {
                Rat s = G(i, j);
                for (int k = 0; k < j; ++k) s -= mu(j, k) * mu(i, k) * B[k];
                mu(i, j) = s / B[j];
            }
            Rat s = G(i, i);
            for (int k = 0; k < i; ++k) s -= mu(i, k) * mu(i, k) * B[k];
            B[i] = s;
            if (s == 0) return i;
        }
        return -1;
    };
    auto isotropic_at = [&](int i) {
        // b_i^* = b_i - sum mu_ij b_j^*, expanded back into lattice coordinates
        std::vector<QVec> star(i + 1, QVec(n));
        for (int a = 0; a <= i; ++a) {
            for (int r = 0; r < n; ++r) star[a][r] = Rat(C(r, a));
            for (int b = 0; b < a; ++b)
                for (int r = 0; r < n; ++r) star[a][r] -= mu(a, b) * star[b][r];
        }
        Int d = 1;
        for (auto& x : star[i]) d = lcm(d, Int(x.get_den()));
        ZVec v(n);
        for (int r = 0; r < n; ++r) v[r] = Rat(star[i][r] * Rat(d)).get_num();
        Int g = gcd_of(v);
        for (auto& x : v) x /= g;
        res.isotropic = v;
    };
    auto sub = [&](int k, int j, const Int& q) {
        for (int i = 0; i < n; ++i) C(i, k) -= q * C(i, j);
        Rat qq(q);
        for (int i = 0; i < n; ++i) G(i, k) -= qq * G(i, j);
        for (int i = 0; i < n; ++i) G(k, i) -= qq * G(j, i);
    };
    auto swap = [&](int k, int j) {
        for (int i = 0; i < n; ++i) std::swap(C(i, k), C(i, j));
        for (int i = 0; i < n; ++i) std::swap(G(i, k), G(i, j));
        for (int i = 0; i < n; ++i) std::swap(G(k, i), G(j, i));
    };
    if (int z = gso(); z >= 0) {
        isotropic_at(z);
        return res;
    }
    int k = 1;
    const Rat delta(3, 4);
    while (k < n) {
        for (int j = k - 1; j >= 0; --j) {
            Int q = round_rat(mu(k, j));
            if (q != 0) {
                sub(k, j, q);
                if (int z = gso(); z >= 0) {
                    isotropic_at(z);
                    return res;
                }
            }
        }
        if (abs(B[k] + mu(k, k - 1) * mu(k, k - 1) * B[k - 1]) >= delta * abs(B[k - 1])) {
            ++k;
        } else {
            swap(k, k - 1);
            if (int z = gso(); z >= 0) {
                isotropic_at(z);
                return res;
            }
            k = std::max(k - 1, 1);
        }
    }
    return res;
}

std::string to_string(const QMat& m) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < m.rows; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < m.cols; ++j) os << (j ? ", " : "") << to_string(m(i, j));
        os << "]";
    }
    os << "]";
    return os.str();
}

} // namespace hyperred
