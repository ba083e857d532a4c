//! Independent reference computations for tests.
//!
//! Nothing here shares code with `saoo-core`: the Fock-space Hamiltonian is
//! assembled from raw integral arrays by acting with ladder operators on
//! occupation bitstrings, and dense linear algebra comes from nalgebra.
//! Bit `j` of a basis index is spin orbital `j`; orbital `p` owns bits `2p`
//! (up) and `2p + 1` (down).

use nalgebra::{ComplexField, DMatrix, DVector};

/// Raw integrals: `h` is `n x n`, `g` is the flat physicist tensor
/// `<pq|rs>` at `((p n + q) n + r) n + s`.
pub struct RawIntegrals<'a> {
    pub n_orb: usize,
    pub core: f64,
    pub h: &'a DMatrix<f64>,
    pub g: &'a [f64],
}

impl RawIntegrals<'_> {
    fn g(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let n = self.n_orb;
        self.g[((p * n + q) * n + r) * n + s]
    }
}

fn annihilate(det: usize, j: usize) -> Option<(f64, usize)> {
    if det >> j & 1 == 0 {
        return None;
    }
    let sign = if (det & ((1 << j) - 1)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    Some((sign, det & !(1 << j)))
}

fn create(det: usize, j: usize) -> Option<(f64, usize)> {
    if det >> j & 1 == 1 {
        return None;
    }
    let sign = if (det & ((1 << j) - 1)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    Some((sign, det | (1 << j)))
}

/// Applies a ladder string, rightmost operator first. `(mode, true)` is a
/// creation operator.
pub fn apply_ladder(det: usize, ops: &[(usize, bool)]) -> Option<(f64, usize)> {
    let mut sign = 1.0;
    let mut d = det;
    for &(mode, dagger) in ops.iter().rev() {
        let (s, nd) = if dagger { create(d, mode)? } else { annihilate(d, mode)? };
        sign *= s;
        d = nd;
    }
    Some((sign, d))
}

/// Dense Fock-space Hamiltonian of dimension `4^n_orb`.
pub fn fock_hamiltonian(ints: &RawIntegrals) -> DMatrix<f64> {
    let n = ints.n_orb;
    let modes = 2 * n;
    let dim = 1usize << modes;
    let mut m = DMatrix::<f64>::identity(dim, dim) * ints.core;
    for det in 0..dim {
        for p in 0..n {
            for q in 0..n {
                for sp in 0..2 {
                    if let Some((s, out)) = apply_ladder(det, &[(2 * p + sp, true), (2 * q + sp, false)]) {
                        m[(out, det)] += s * ints.h[(p, q)];
                    }
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s_ in 0..n {
                        let g = ints.g(p, q, r, s_);
                        if g == 0.0 {
                            continue;
                        }
                        for a in 0..2 {
                            for b in 0..2 {
                                let ops = [(2 * p + a, true), (2 * q + b, true), (2 * s_ + b, false), (2 * r + a, false)];
                                if let Some((s, out)) = apply_ladder(det, &ops) {
                                    m[(out, det)] += 0.5 * s * g;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    m
}

/// Total spin squared on `n_orb` spatial orbitals, in the same basis.
pub fn s_squared(n_orb: usize) -> DMatrix<f64> {
    let dim = 1usize << (2 * n_orb);
    let mut m = DMatrix::zeros(dim, dim);
    for det in 0..dim {
        let up = (0..n_orb).filter(|p| det >> (2 * p) & 1 == 1).count() as f64;
        let down = (0..n_orb).filter(|p| det >> (2 * p + 1) & 1 == 1).count() as f64;
        let sz = 0.5 * (up - down);
        m[(det, det)] += sz * sz + sz;
        // S- S+ with S+ = sum_p a+_{p up} a_{p down}
        for p in 0..n_orb {
            for q in 0..n_orb {
                let ops = [(2 * q + 1, true), (2 * q, false), (2 * p, true), (2 * p + 1, false)];
                if let Some((s, out)) = apply_ladder(det, &ops) {
                    m[(out, det)] += s;
                }
            }
        }
    }
    m
}

/// Basis indices with `n_elec` electrons and `2 S_z = ms2`.
pub fn sector_basis(n_orb: usize, n_elec: usize, ms2: i64) -> Vec<usize> {
    (0..1usize << (2 * n_orb))
        .filter(|&det| {
            let up = (0..n_orb).filter(|p| det >> (2 * p) & 1 == 1).count() as i64;
            let down = (0..n_orb).filter(|p| det >> (2 * p + 1) & 1 == 1).count() as i64;
            (up + down) as usize == n_elec && up - down == ms2
        })
        .collect()
}

/// Eigenpairs of `h` restricted to fixed `N`, `S_z = 0` and total spin `s`.
/// Eigenvectors are returned in the full Fock basis, ascending in energy.
pub fn spin_sector_eigen(h: &DMatrix<f64>, n_orb: usize, n_elec: usize, s: f64) -> (Vec<f64>, Vec<DVector<f64>>) {
    let basis = sector_basis(n_orb, n_elec, 0);
    let k = basis.len();
    let s2_full = s_squared(n_orb);
    let s2 = DMatrix::from_fn(k, k, |i, j| s2_full[(basis[i], basis[j])]);
    let eig = s2.symmetric_eigen();
    let target = s * (s + 1.0);
    let cols: Vec<DVector<f64>> = (0..k)
        .filter(|&i| (eig.eigenvalues[i] - target).abs() < 1e-8)
        .map(|i| eig.eigenvectors.column(i).into_owned())
        .collect();
    let v = DMatrix::from_columns(&cols);
    let hb = DMatrix::from_fn(k, k, |i, j| h[(basis[i], basis[j])]);
    let hs = v.transpose() * hb * &v;
    let e = hs.symmetric_eigen();
    let mut order: Vec<usize> = (0..e.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b]));
    let dim = h.nrows();
    let mut values = Vec::new();
    let mut vectors = Vec::new();
    for i in order {
        values.push(e.eigenvalues[i]);
        let local = &v * e.eigenvectors.column(i);
        let mut full = DVector::zeros(dim);
        for (j, &b) in basis.iter().enumerate() {
            full[b] = local[j];
        }
        vectors.push(full);
    }
    (values, vectors)
}

/// Sorted eigenvalues of a real symmetric matrix.
pub fn sorted_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Slater–Condon energy of the determinant with the given spin orbitals
/// occupied.
pub fn determinant_energy(ints: &RawIntegrals, occupied: &[usize]) -> f64 {
    let mut e = ints.core;
    for &i in occupied {
        e += ints.h[(i / 2, i / 2)];
    }
    for &i in occupied {
        for &j in occupied {
            let (p, q) = (i / 2, j / 2);
            e += 0.5 * ints.g(p, q, p, q);
            if i % 2 == j % 2 {
                e -= 0.5 * ints.g(p, q, q, p);
            }
        }
    }
    e
}

/// Matrix exponential by a truncated Taylor series with scaling and
/// squaring.
pub fn expm_taylor<T: ComplexField<RealField = f64>>(a: &DMatrix<T>) -> DMatrix<T> {
    let n = a.nrows();
    let norm = a.norm();
    let squarings = if norm > 0.25 { (norm / 0.25).log2().ceil() as i32 } else { 0 };
    let scaled = a.map(|x| x.unscale(2f64.powi(squarings)));
    let mut term = DMatrix::<T>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..40 {
        term = (&term * &scaled).map(|x| x.unscale(k as f64));
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Direct eight-loop transform `h' = U^T h U`, `g'_{pqrs} = sum U_ap U_bq
/// U_cr U_ds g_abcd`.
pub fn transform_naive(h: &DMatrix<f64>, g: &[f64], u: &DMatrix<f64>) -> (DMatrix<f64>, Vec<f64>) {
    let n = h.nrows();
    let h2 = u.transpose() * h * u;
    let idx = |p: usize, q: usize, r: usize, s: usize| ((p * n + q) * n + r) * n + s;
    let mut g2 = vec![0.0; n.pow(4)];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let mut acc = 0.0;
                    for a in 0..n {
                        for b in 0..n {
                            for c in 0..n {
                                for d in 0..n {
                                    acc += u[(a, p)] * u[(b, q)] * u[(c, r)] * u[(d, s)] * g[idx(a, b, c, d)];
                                }
                            }
                        }
                    }
                    g2[idx(p, q, r, s)] = acc;
                }
            }
        }
    }
    (h2, g2)
}
