//! Dense state-vector reference computations for small systems.
//!
//! Qubit 0 is the least significant bit of an amplitude index. Operators
//! are assembled from 2×2 matrices by Kronecker products, so nothing here
//! relies on the symplectic multiplication rules being checked.

use crate::bits::BitVec;
use crate::codes::CodeInstance;
use crate::error::{Error, Result};
use crate::ghz::{build_ghz_tableau, DisentanglerMap};
use crate::group::StabilizerGroup;
use crate::lattice::Loop;
use crate::pauli::PauliOperator;
use num_complex::Complex64;

pub const MAX_QUBITS: usize = 14;
pub const MAX_LOOP: usize = 4;

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub dim: usize,
    pub data: Vec<C>,
}

impl Matrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![c(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = c(1.0, 0.0);
        }
        Matrix { dim, data }
    }

    pub fn get(&self, r: usize, col: usize) -> C {
        self.data[r * self.dim + col]
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        let d = self.dim;
        let mut data = vec![c(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == c(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    data[i * d + j] += a * o.data[k * d + j];
                }
            }
        }
        Matrix { dim: d, data }
    }

    pub fn adjoint(&self) -> Matrix {
        let d = self.dim;
        let mut data = vec![c(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        Matrix { dim: d, data }
    }

    /// `self ⊗ o` with `o` acting on the low-order qubits.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let (a, b) = (self.dim, o.dim);
        let d = a * b;
        let mut data = vec![c(0.0, 0.0); d * d];
        for i in 0..a {
            for j in 0..a {
                let s = self.data[i * a + j];
                for k in 0..b {
                    for l in 0..b {
                        data[(i * b + k) * d + (j * b + l)] = s * o.data[k * b + l];
                    }
                }
            }
        }
        Matrix { dim: d, data }
    }

    pub fn apply(&self, v: &[C]) -> Vec<C> {
        let d = self.dim;
        (0..d)
            .map(|i| (0..d).map(|k| self.data[i * d + k] * v[k]).sum())
            .collect()
    }

    pub fn scale(&self, s: C) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn max_abs_diff(&self, o: &Matrix) -> f64 {
        self.data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<C> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }
}

fn single(x: bool, z: bool) -> Matrix {
    let xm = Matrix {
        dim: 2,
        data: vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
    };
    let zm = Matrix {
        dim: 2,
        data: vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
    };
    let mut m = Matrix::identity(2);
    if x {
        m = m.mul(&xm);
    }
    if z {
        m = m.mul(&zm);
    }
    m
}

fn i_pow(p: u8) -> C {
    [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][(p % 4) as usize]
}

fn check_size(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::SizeLimit(format!(
            "{n} qubits exceeds the dense limit of {limit}"
        )));
    }
    Ok(())
}

/// Dense matrix of a Pauli operator.
pub fn pauli_matrix(p: &PauliOperator) -> Result<Matrix> {
    check_size(p.n(), 10)?;
    let mut m = Matrix::identity(1);
    for q in (0..p.n()).rev() {
        let (x, z) = p.qubit(q);
        m = m.kron(&single(x, z));
    }
    Ok(m.scale(i_pow(p.phase())))
}

/// `P|ψ⟩` without forming a matrix: each qubit factor `X^x Z^z` is applied
/// in turn, Z first.
pub fn apply_pauli(p: &PauliOperator, psi: &[C]) -> Vec<C> {
    let n = p.n();
    let mut out = psi.to_vec();
    for q in 0..n {
        let (x, z) = p.qubit(q);
        let bit = 1usize << q;
        if z {
            for (b, a) in out.iter_mut().enumerate() {
                if b & bit != 0 {
                    *a = -*a;
                }
            }
        }
        if x {
            for b in 0..out.len() {
                if b & bit == 0 {
                    out.swap(b, b | bit);
                }
            }
        }
    }
    let s = i_pow(p.phase());
    out.iter_mut().for_each(|a| *a *= s);
    out
}

pub fn norm(v: &[C]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalized(v: &[C]) -> Option<Vec<C>> {
    let nv = norm(v);
    (nv > 1e-9).then(|| v.iter().map(|a| a / nv).collect())
}

pub fn inner(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `⟨ψ|P|ψ⟩`.
pub fn expectation(p: &PauliOperator, psi: &[C]) -> C {
    inner(psi, &apply_pauli(p, psi))
}

/// True if `a = e^{iθ} b` for some phase, to `tol`.
pub fn equal_up_to_phase(a: &[C], b: &[C], tol: f64) -> bool {
    (inner(a, b).norm() - norm(a) * norm(b)).abs() < tol && (norm(a) - norm(b)).abs() < tol
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    pub n: usize,
    pub amps: Vec<C>,
}

/// `∏(1 + G)|0…0⟩` over the X-type generators, normalized.
pub fn dense_ground_state(code: &CodeInstance) -> Result<DenseState> {
    let n = code.n();
    check_size(n, MAX_QUBITS)?;
    let mut psi = vec![c(0.0, 0.0); 1 << n];
    psi[0] = c(1.0, 0.0);
    for g in code
        .generators()
        .iter()
        .filter(|g| g.is_x_type() && !g.is_identity())
    {
        let gp = apply_pauli(g, &psi);
        psi.iter_mut().zip(gp).for_each(|(a, b)| *a += b);
    }
    let amps = normalized(&psi)
        .ok_or_else(|| Error::Internal("ground-state projection vanished".into()))?;
    Ok(DenseState { n, amps })
}

/// The state fixed by a full-rank group: `∏(1 + S)/2` applied to the first
/// computational basis state it does not annihilate.
pub fn dense_stabilizer_state(group: &StabilizerGroup) -> Result<DenseState> {
    let n = group.n();
    check_size(n, MAX_QUBITS)?;
    for b in 0..1usize << n {
        let mut psi = vec![c(0.0, 0.0); 1 << n];
        psi[b] = c(1.0, 0.0);
        for g in group.generators() {
            let gp = apply_pauli(g, &psi);
            psi.iter_mut()
                .zip(gp)
                .for_each(|(a, x)| *a = (*a + x) * 0.5);
        }
        if let Some(amps) = normalized(&psi) {
            return Ok(DenseState { n, amps });
        }
    }
    Err(Error::Internal(
        "group annihilates every basis state".into(),
    ))
}

/// Schmidt rank of `ψ` across `A | Ā`, by Gaussian elimination with
/// partial pivoting on the `2^|A| × 2^|Ā|` coefficient matrix.
pub fn schmidt_rank(state: &DenseState, a: &[usize]) -> Result<usize> {
    let n = state.n;
    if a.iter().any(|&q| q >= n) {
        return Err(Error::Geometry("cut qubit outside the register".into()));
    }
    let mut inside: Vec<usize> = a.to_vec();
    inside.sort_unstable();
    inside.dedup();
    let outside: Vec<usize> = (0..n).filter(|q| !inside.contains(q)).collect();
    let (ra, rb) = (1usize << inside.len(), 1usize << outside.len());
    let mut m = vec![vec![c(0.0, 0.0); rb]; ra];
    for (idx, &amp) in state.amps.iter().enumerate() {
        let i = inside
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &q)| acc | (((idx >> q) & 1) << k));
        let j = outside
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &q)| acc | (((idx >> q) & 1) << k));
        m[i][j] = amp;
    }
    let tol = 1e-9;
    let mut rank = 0;
    for col in 0..rb {
        let Some(piv) = (rank..ra).max_by(|&x, &y| m[x][col].norm().total_cmp(&m[y][col].norm()))
        else {
            break;
        };
        if m[piv][col].norm() < tol {
            continue;
        }
        m.swap(rank, piv);
        let pivot = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[col] / pivot[col];
            if f.norm() > 0.0 {
                for (dst, v) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *dst -= f * v;
                }
            }
        }
        rank += 1;
        if rank == ra {
            break;
        }
    }
    Ok(rank)
}

/// `Tr ρ_A²`.
pub fn purity(state: &DenseState, a: &[usize]) -> f64 {
    let n = state.n;
    let mask = a.iter().fold(0usize, |m, &q| m | (1 << q));
    // ρ_A[i][i'] = Σ_j ψ(i, j) ψ*(i', j); purity = Σ |ρ_A|².
    let mut by_outside: std::collections::HashMap<usize, Vec<(usize, C)>> = Default::default();
    for (idx, &amp) in state.amps.iter().enumerate() {
        if amp.norm() > 0.0 {
            by_outside
                .entry(idx & !mask)
                .or_default()
                .push((idx & mask, amp));
        }
    }
    let mut rho: std::collections::HashMap<(usize, usize), C> = Default::default();
    for v in by_outside.values() {
        for &(i, x) in v {
            for &(k, y) in v {
                *rho.entry((i, k)).or_default() += x * y.conj();
            }
        }
    }
    let _ = n;
    rho.values().map(|z| z.norm_sqr()).sum()
}

/// Entropy in bits from the Schmidt rank, after checking that the spectrum
/// is flat (purity `= 2^{-S}`), as it must be for a stabilizer state.
pub fn dense_entropy(state: &DenseState, a: &[usize]) -> Result<usize> {
    let r = schmidt_rank(state, a)?;
    if !r.is_power_of_two() {
        return Err(Error::Internal(format!(
            "Schmidt rank {r} is not a power of two"
        )));
    }
    let s = r.trailing_zeros() as usize;
    let p = purity(state, a);
    if (p - 1.0 / r as f64).abs() > 1e-9 {
        return Err(Error::Internal(format!(
            "reduced spectrum not flat: purity {p}, rank {r}"
        )));
    }
    Ok(s)
}

/// Dense GHZ generators `g_i` and logical `X̄_i` on a loop `0..N`.
pub fn dense_loop_operators(n: usize) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
    if !(2..=MAX_LOOP).contains(&n) {
        return Err(Error::SizeLimit(format!(
            "dense GHZ basis supports 2 <= N <= {MAX_LOOP}, got {n}"
        )));
    }
    let op = |xs: &[usize], zs: &[usize]| {
        // Factors on distinct qubits commute; on a shared qubit X is left of Z.
        let mut m = Matrix::identity(1);
        for q in (0..n).rev() {
            m = m.kron(&single(xs.contains(&q), zs.contains(&q)));
        }
        m
    };
    let all: Vec<usize> = (0..n).collect();
    let mut g: Vec<Matrix> = (0..n - 1).map(|i| op(&[], &[i, i + 1])).collect();
    // Z_N Z_1 Ω_x: the Z factor stands left of Ω_x, so on qubits 1 and N the
    // product is Z·X = -X·Z.
    g.push(op(&[], &[n - 1, 0]).mul(&op(&all, &[])));
    let mut xbar: Vec<Matrix> = (0..n - 1)
        .map(|i| op(&[], &[0]).mul(&op(&(i + 1..n).collect::<Vec<_>>(), &[])))
        .collect();
    xbar.push(op(&[], &[0]));
    Ok((g, xbar))
}

/// `∏_i (1 + (−1)^{m_i} g_i)|+…+⟩`, normalized; `None` when it vanishes.
pub fn projected_plus_state(n: usize, m: usize) -> Result<Option<Vec<C>>> {
    let (g, _) = dense_loop_operators(n)?;
    let d = 1usize << n;
    let mut psi = vec![c(1.0 / (d as f64).sqrt(), 0.0); d];
    for (i, gi) in g.iter().enumerate() {
        let s = if (m >> i) & 1 == 1 { -1.0 } else { 1.0 };
        let gp = gi.apply(&psi);
        psi.iter_mut().zip(gp).for_each(|(a, b)| *a += b * s);
    }
    Ok(normalized(&psi))
}

/// Unitary whose column `m` is `∏ X̄_i^{m_i} ψ_0`, where `ψ_0` is the joint
/// `+1` eigenvector of all `g_i` obtained by projecting `|+…+⟩`.
pub fn dense_ghz_unitary(n: usize) -> Result<Matrix> {
    let (_, xbar) = dense_loop_operators(n)?;
    let psi0 = projected_plus_state(n, 0)?
        .ok_or_else(|| Error::Internal("m = 0 projection vanished".into()))?;
    let d = 1usize << n;
    let mut u = Matrix {
        dim: d,
        data: vec![c(0.0, 0.0); d * d],
    };
    for m in 0..d {
        let mut col = psi0.clone();
        for (i, xb) in xbar.iter().enumerate() {
            if (m >> i) & 1 == 1 {
                col = xb.apply(&col);
            }
        }
        for (r, a) in col.into_iter().enumerate() {
            u.data[r * d + m] = a;
        }
    }
    Ok(u)
}

/// `U† P U` equals the dense image, sign included, to `1e-10`.
pub fn conjugation_check(p: &PauliOperator, u: &Matrix, image: &PauliOperator) -> Result<bool> {
    if p.n() != image.n() || u.dim != 1 << p.n() {
        return Err(Error::SizeMismatch {
            left: p.n(),
            right: image.n(),
        });
    }
    check_size(p.n(), MAX_LOOP)?;
    let lhs = u.adjoint().mul(&pauli_matrix(p)?).mul(u);
    Ok(lhs.max_abs_diff(&pauli_matrix(image)?) < 1e-10)
}

/// Single loop `0..N` on an `N`-qubit register, as a disentangler.
pub fn loop_map(n: usize) -> Result<DisentanglerMap> {
    let lp = Loop::closed_ring((0..n).collect());
    DisentanglerMap::new(n, vec![build_ghz_tableau(&lp, n)?])
}

/// Indices of `ops` whose symbolic image disagrees with dense conjugation by
/// the loop unitary.
pub fn map_disagreements(n: usize, ops: &[PauliOperator]) -> Result<Vec<usize>> {
    let map = loop_map(n)?;
    let u = dense_ghz_unitary(n)?;
    let mut bad = Vec::new();
    for (i, p) in ops.iter().enumerate() {
        if !conjugation_check(p, &u, &map.map_pauli(p)?)? {
            bad.push(i);
        }
    }
    Ok(bad)
}

/// All `4^n` Hermitian Paulis with `+` sign in Y notation.
pub fn all_paulis(n: usize) -> Vec<PauliOperator> {
    (0..1usize << (2 * n))
        .map(|code| {
            let x = BitVec::from_indices(n, (0..n).filter(|q| (code >> (2 * q)) & 1 == 1));
            let z = BitVec::from_indices(n, (0..n).filter(|q| (code >> (2 * q + 1)) & 1 == 1));
            let ys = x.and_count(&z) as u8;
            PauliOperator::new(x, z, ys % 4).expect("sizes agree")
        })
        .collect()
}

/// Operators of `ops` for which `state` is not a `+1` eigenvector (1e-10).
pub fn eigen_violations(state: &DenseState, ops: &[PauliOperator]) -> Vec<usize> {
    ops.iter()
        .enumerate()
        .filter(|(_, p)| (expectation(p, &state.amps) - c(1.0, 0.0)).norm() > 1e-10)
        .map(|(i, _)| i)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SelfTestResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &str, r: Result<String>) -> SelfTestResult {
    match r {
        Ok(detail) => SelfTestResult {
            name: name.into(),
            passed: true,
            detail,
        },
        Err(e) => SelfTestResult {
            name: name.into(),
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Internal(msg.into()))
    }
}

/// Dense cross-checks of the symbolic machinery, small enough to run
/// interactively.
pub fn selftest() -> Vec<SelfTestResult> {
    use crate::analysis::entanglement_entropy;
    use crate::codes::{build_toric_code, ground_state_completion};
    use crate::ghz::validate_tableau;
    use crate::lattice::build_square_torus;

    let mut out = Vec::new();
    out.push(outcome(
        "tableau validity N=3..8",
        (3..=8)
            .try_for_each(|n| {
                let t = build_ghz_tableau(&Loop::closed_ring((0..n).collect()), n)?;
                let r = validate_tableau(&t);
                ensure(
                    r.passed(),
                    format!(
                        "N={n}: {} relation failures, rank {}",
                        r.failures.len(),
                        r.rank
                    ),
                )
            })
            .map(|_| "6 loop sizes".into()),
    ));
    out.push(outcome(
        "unitarity N=2..4",
        (2..=MAX_LOOP)
            .try_for_each(|n| {
                let u = dense_ghz_unitary(n)?;
                ensure(
                    u.adjoint().mul(&u).max_abs_diff(&Matrix::identity(1 << n)) < 1e-12,
                    format!("N={n} not unitary"),
                )
            })
            .map(|_| "3 loop sizes".into()),
    ));
    out.push(outcome("conjugation N=3 exhaustive", {
        let ops = all_paulis(3);
        map_disagreements(3, &ops).and_then(|bad| {
            ensure(bad.is_empty(), format!("{} of 64 disagree", bad.len()))
                .map(|_| "64 of 64 agree".into())
        })
    }));
    out.push(outcome(
        "toric 2x2 ground state",
        (|| {
            let code = build_toric_code(&build_square_torus(2)?)?;
            let st = dense_ground_state(&code)?;
            let full = ground_state_completion(&code)?;
            let bad = eigen_violations(&st, full.group().generators());
            ensure(
                bad.is_empty(),
                format!("{} stabilizers violated", bad.len()),
            )?;
            let mut cuts = 0;
            for mask in 0u32..256 {
                if mask % 7 != 0 {
                    continue;
                }
                let a: Vec<usize> = (0..8).filter(|q| mask >> q & 1 == 1).collect();
                let (s, d) = (entanglement_entropy(&full, &a)?, dense_entropy(&st, &a)?);
                ensure(s == d, format!("cut {a:?}: formula {s}, dense {d}"))?;
                cuts += 1;
            }
            Ok(format!("eigenvalues and {cuts} entropy cuts agree"))
        })(),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_matrix() {
        let y = pauli_matrix(&"Y".parse().unwrap()).unwrap();
        assert!((y.get(0, 1) - c(0.0, -1.0)).norm() < 1e-15);
        assert!((y.get(1, 0) - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn apply_matches_matrix() {
        let p: PauliOperator = "-XYZ".parse().unwrap();
        let m = pauli_matrix(&p).unwrap();
        let v: Vec<C> = (0..8).map(|k| c(k as f64, 1.0 - k as f64)).collect();
        let a = apply_pauli(&p, &v);
        let b = m.apply(&v);
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).norm() < 1e-12));
    }

    #[test]
    fn bell_entropy() {
        let s = 1.0 / 2f64.sqrt();
        let st = DenseState {
            n: 2,
            amps: vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)],
        };
        assert_eq!(dense_entropy(&st, &[0]).unwrap(), 1);
        assert_eq!(dense_entropy(&st, &[]).unwrap(), 0);
        assert_eq!(dense_entropy(&st, &[0, 1]).unwrap(), 0);
    }

    #[test]
    fn selftest_passes() {
        for r in selftest() {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }

    #[test]
    fn unitary_is_unitary() {
        for n in 2..=4 {
            let u = dense_ghz_unitary(n).unwrap();
            assert!(u.adjoint().mul(&u).max_abs_diff(&Matrix::identity(1 << n)) < 1e-12);
        }
        assert!(dense_ghz_unitary(5).is_err());
        assert!(dense_ghz_unitary(1).is_err());
    }
}
