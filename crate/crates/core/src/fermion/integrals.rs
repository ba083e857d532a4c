use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// One- and two-electron integrals over real spatial orbitals.
///
/// `g` is stored in physicist order: `g(p, q, r, s) = <pq|rs>`, which equals
/// the chemist integral `(pr|qs)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MolecularIntegrals {
    pub n_orb: usize,
    pub n_elec: usize,
    pub ms2: i64,
    pub core_energy: f64,
    pub h: DMatrix<f64>,
    g: Vec<f64>,
}

impl MolecularIntegrals {
    pub fn new(n_orb: usize, n_elec: usize, ms2: i64, core_energy: f64, h: DMatrix<f64>, g: Vec<f64>) -> Result<Self> {
        if h.nrows() != n_orb || h.ncols() != n_orb {
            return Err(Error::Shape(format!(
                "one-electron matrix is {}x{}, expected {n_orb}x{n_orb}",
                h.nrows(),
                h.ncols()
            )));
        }
        if g.len() != n_orb.pow(4) {
            return Err(Error::Shape(format!(
                "two-electron tensor has {} entries, expected {}",
                g.len(),
                n_orb.pow(4)
            )));
        }
        if n_elec > 2 * n_orb {
            return Err(Error::Config(format!("{n_elec} electrons do not fit in {n_orb} orbitals")));
        }
        Ok(Self { n_orb, n_elec, ms2, core_energy, h, g })
    }

    /// All-zero integrals.
    pub fn zeros(n_orb: usize, n_elec: usize) -> Result<Self> {
        Self::new(n_orb, n_elec, 0, 0.0, DMatrix::zeros(n_orb, n_orb), vec![0.0; n_orb.pow(4)])
    }

    fn index(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        ((p * self.n_orb + q) * self.n_orb + r) * self.n_orb + s
    }

    /// Physicist `<pq|rs>`.
    pub fn g(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.g[self.index(p, q, r, s)]
    }

    /// Chemist `(pq|rs)`.
    pub fn chem(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.g(p, r, q, s)
    }

    /// Sets chemist `(ij|kl)` and every slot related by real-orbital symmetry.
    pub fn set_chem(&mut self, i: usize, j: usize, k: usize, l: usize, value: f64) {
        for (a, b, c, d) in [
            (i, j, k, l),
            (j, i, k, l),
            (i, j, l, k),
            (j, i, l, k),
            (k, l, i, j),
            (l, k, i, j),
            (k, l, j, i),
            (l, k, j, i),
        ] {
            let idx = self.index(a, c, b, d);
            self.g[idx] = value;
        }
    }

    /// Flat physicist tensor, index `((p n + q) n + r) n + s`.
    pub fn g_tensor(&self) -> &[f64] {
        &self.g
    }

    pub fn n_qubits(&self) -> usize {
        2 * self.n_orb
    }

    /// Checks `h` symmetry and the eightfold symmetry of `g` within `tol`.
    pub fn check_symmetry(&self, tol: f64) -> Result<()> {
        let n = self.n_orb;
        for p in 0..n {
            for q in 0..n {
                if (self.h[(p, q)] - self.h[(q, p)]).abs() > tol {
                    return Err(Error::Config(format!("h is not symmetric at ({p}, {q})")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = self.chem(i, j, k, l);
                        for w in [self.chem(j, i, k, l), self.chem(i, j, l, k), self.chem(k, l, i, j)] {
                            if (v - w).abs() > tol {
                                return Err(Error::Config(format!(
                                    "two-electron integrals lack real-orbital symmetry at ({i}{j}|{k}{l})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Closed-shell determinant energy with the lowest `n_elec / 2` orbitals
    /// doubly occupied.
    pub fn closed_shell_energy(&self) -> f64 {
        let occ = self.n_elec / 2;
        let mut e = self.core_energy;
        for i in 0..occ {
            e += 2.0 * self.h[(i, i)];
            for j in 0..occ {
                e += 2.0 * self.chem(i, i, j, j) - self.chem(i, j, j, i);
            }
        }
        e
    }
}

/// Folds the first `n_frozen` doubly-occupied orbitals into an effective
/// one-electron operator and the core energy.
pub fn freeze_core(integrals: &MolecularIntegrals, n_frozen: usize) -> Result<MolecularIntegrals> {
    if n_frozen == 0 {
        return Ok(integrals.clone());
    }
    if 2 * n_frozen > integrals.n_elec {
        return Err(Error::Config(format!(
            "cannot freeze {n_frozen} orbitals with {} electrons",
            integrals.n_elec
        )));
    }
    if n_frozen >= integrals.n_orb {
        return Err(Error::Config(format!(
            "freezing {n_frozen} of {} orbitals leaves no active space",
            integrals.n_orb
        )));
    }
    let n = integrals.n_orb - n_frozen;
    let frozen = 0..n_frozen;

    let mut core = integrals.core_energy;
    for i in frozen.clone() {
        core += 2.0 * integrals.h[(i, i)];
        for j in frozen.clone() {
            core += 2.0 * integrals.chem(i, i, j, j) - integrals.chem(i, j, j, i);
        }
    }

    let h = DMatrix::from_fn(n, n, |a, b| {
        let (p, q) = (a + n_frozen, b + n_frozen);
        integrals.h[(p, q)]
            + frozen
                .clone()
                .map(|i| 2.0 * integrals.chem(p, q, i, i) - integrals.chem(p, i, i, q))
                .sum::<f64>()
    });

    let mut g = vec![0.0; n.pow(4)];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    g[((p * n + q) * n + r) * n + s] =
                        integrals.g(p + n_frozen, q + n_frozen, r + n_frozen, s + n_frozen);
                }
            }
        }
    }
    MolecularIntegrals::new(n, integrals.n_elec - 2 * n_frozen, integrals.ms2, core, h, g)
}
