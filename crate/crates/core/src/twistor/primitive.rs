//! Smooth `∂̄`-primitives on the fibre sphere by linear ansatz.

use std::collections::BTreeMap;

use crate::exact_linalg::{GaussRat, Rref, SparseRow};

use super::sphere::{SpherePoly, SphereScalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PrimitiveError {
    #[error("the dμ̄-coefficient is not smooth at μ = ∞")]
    NotSmooth,
    #[error("no smooth primitive with denominator power up to {bound}")]
    NoPrimitive { bound: u32 },
}

/// Solves `Σ_k w_k · ∂g_k/∂μ̄ = target` for smooth `g_k` with `g_k(0) = 0`,
/// trying ansatz denominator powers `start..=start+2`.
pub fn solve_weighted(
    target: &SphereScalar,
    weights: &[SphereScalar],
    start: u32,
) -> Result<Vec<SphereScalar>, PrimitiveError> {
    if target.is_zero() {
        return Ok(vec![SphereScalar::zero(); weights.len()]);
    }
    for n in start..=start + 2 {
        if let Some(sol) = try_bound(target, weights, n) {
            return Ok(sol);
        }
    }
    Err(PrimitiveError::NoPrimitive { bound: start + 2 })
}

fn charge(k: &[u32; 2]) -> i64 {
    k[0] as i64 - k[1] as i64
}

fn try_bound(target: &SphereScalar, weights: &[SphereScalar], n: u32) -> Option<Vec<SphereScalar>> {
    let wden = weights.iter().map(|w| w.den()).max().unwrap_or(0);
    let p = (n + 1 + wden).max(target.den());
    let rhs = target.numer_at(p);

    // Columns: (weight index, a, b) with numerator of w_k · ∂(μ^a μ̄^b / Dⁿ)/∂μ̄
    // brought to denominator power p.
    let mut cols: Vec<((usize, u32, u32), SpherePoly)> = Vec::new();
    for (wi, w) in weights.iter().enumerate() {
        for a in 0..=n {
            for b in 0..=n {
                if a == 0 && b == 0 {
                    continue;
                }
                let phi = SphereScalar::monomial(GaussRat::one(), a, b, n);
                let col = phi.d_dmubar().mul(w);
                if col.is_zero() {
                    continue;
                }
                cols.push(((wi, a, b), col.numer_at(p)));
            }
        }
    }

    // The equations split by charge μ-degree minus μ̄-degree.
    let mut by_charge: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (ci, (_, poly)) in cols.iter().enumerate() {
        let ch = charge(poly.terms.keys().next().unwrap());
        by_charge.entry(ch).or_default().push(ci);
    }
    let mut rhs_by_charge: BTreeMap<i64, Vec<([u32; 2], GaussRat)>> = BTreeMap::new();
    for (k, c) in &rhs.terms {
        rhs_by_charge.entry(charge(k)).or_default().push((*k, c.clone()));
    }
    for ch in rhs_by_charge.keys() {
        if !by_charge.contains_key(ch) {
            return None;
        }
    }

    let mut solution: Vec<GaussRat> = vec![GaussRat::zero(); cols.len()];
    for (ch, col_ids) in &by_charge {
        let Some(rhs_terms) = rhs_by_charge.get(ch) else {
            continue;
        };
        // rows indexed by monomial, columns by local unknown, plus rhs column
        let mut rows: BTreeMap<[u32; 2], Vec<(usize, GaussRat)>> = BTreeMap::new();
        for (local, ci) in col_ids.iter().enumerate() {
            for (k, c) in &cols[*ci].1.terms {
                rows.entry(*k).or_default().push((local, c.clone()));
            }
        }
        let nc = col_ids.len();
        for (k, c) in rhs_terms {
            rows.entry(*k).or_default().push((nc, c.clone()));
        }
        let mut e = Rref::new(nc + 1);
        for (_, r) in rows {
            let mut r: SparseRow = r;
            r.sort_by_key(|(c, _)| *c);
            e.push(r);
        }
        if e.pivot_cols().any(|c| *c == nc) {
            return None;
        }
        for (pc, row) in e.pivot_rows() {
            if let Some((c, v)) = row.last() {
                if *c == nc {
                    solution[col_ids[*pc]] = v.clone();
                }
            }
        }
    }

    let mut out: Vec<SpherePoly> = vec![SpherePoly::zero(); weights.len()];
    for (ci, ((wi, a, b), _)) in cols.iter().enumerate() {
        if !solution[ci].is_zero() {
            out[*wi].add_term([*a, *b], &solution[ci]);
        }
    }
    Some(out.into_iter().map(|p| SphereScalar::new(p, n)).collect())
}

/// Smooth `f` with `∂f/∂μ̄ = g` and `f(0) = 0`.
pub fn dbar_primitive(g: &SphereScalar) -> Result<SphereScalar, PrimitiveError> {
    if !g.is_smooth_on_sphere(true) {
        return Err(PrimitiveError::NotSmooth);
    }
    let start = g.den() + 1;
    let mut sol = solve_weighted(g, &[SphereScalar::one()], start)?;
    Ok(sol.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_examples() {
        let g1 = SphereScalar::monomial(GaussRat::from_int(-1), 2, 0, 2);
        assert_eq!(dbar_primitive(&g1).unwrap(), SphereScalar::f1());
        assert_eq!(dbar_primitive(&SphereScalar::inv_d(2)).unwrap(), SphereScalar::f2());
        let g3 = SphereScalar::monomial(GaussRat::from_int(-1), 1, 0, 2);
        assert_eq!(
            dbar_primitive(&g3).unwrap(),
            SphereScalar::f3().sub(&SphereScalar::one())
        );
        assert_eq!(dbar_primitive(&SphereScalar::zero()).unwrap(), SphereScalar::zero());
        assert_eq!(
            dbar_primitive(&SphereScalar::f3()),
            Err(PrimitiveError::NotSmooth)
        );
    }
}
