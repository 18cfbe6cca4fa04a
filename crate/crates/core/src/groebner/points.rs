//! Rational points of polynomial systems.

use num_traits::Zero;

use super::{buchberger, elimination_ideal};
use crate::algebra::{AlgebraError, MultiPoly, Rational, TermOrder, UniPoly};

/// Values tried for a coordinate left free by the elimination ideal.
pub const SAMPLE_VALUES: [i64; 4] = [0, 1, -1, 2];

/// Rational points found for a system.
#[derive(Clone, PartialEq, Debug)]
pub struct PointSet {
    /// Points in discovery order, each with one entry per variable.
    pub points: Vec<Vec<Rational>>,
    /// `true` when no coordinate had to be sampled and the point budget was
    /// not hit, so `points` lists every rational point.
    pub complete: bool,
}

/// Enumerates rational points of `V(gens)`, solving for the last variable
/// first.
///
/// When the elimination ideal in the last variable is nonzero its rational
/// roots are taken; otherwise the coordinate is free and the values
/// [`SAMPLE_VALUES`] are tried. At most `budget` points are returned.
pub fn rational_points(gens: &[MultiPoly], nvars: usize, budget: usize) -> Result<PointSet, AlgebraError> {
    let mut out = PointSet {
        points: Vec::new(),
        complete: true,
    };
    let gens: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if let Some(bad) = gens.iter().find(|g| g.nvars() != nvars) {
        return Err(AlgebraError::SignatureMismatch {
            left: nvars,
            right: bad.nvars(),
        });
    }
    solve(&gens, nvars, budget, &mut Vec::new(), &mut out)?;
    Ok(out)
}

fn solve(
    gens: &[MultiPoly],
    nvars: usize,
    budget: usize,
    suffix: &mut Vec<Rational>,
    out: &mut PointSet,
) -> Result<(), AlgebraError> {
    if out.points.len() >= budget {
        out.complete = false;
        return Ok(());
    }
    if nvars == 0 {
        if gens.iter().all(|g| g.as_constant().is_some_and(|c| c.is_zero())) {
            let mut p = suffix.clone();
            p.reverse();
            out.points.push(p);
        }
        return Ok(());
    }
    let last = nvars - 1;
    let values: Vec<Rational> = if gens.is_empty() {
        out.complete = false;
        SAMPLE_VALUES.iter().map(|v| Rational::from_integer((*v).into())).collect()
    } else {
        let order = if nvars == 1 { TermOrder::GrevLex } else { TermOrder::Elim(last) };
        let gb = buchberger(gens, order)?;
        if gb.is_unit() {
            return Ok(());
        }
        let elim = elimination_ideal(&gb, last);
        match elim.first() {
            Some(p) => UniPoly::from_multi(p, 0)
                .expect("univariate elimination polynomial")
                .rational_roots()
                .into_iter()
                .map(|(r, _)| r)
                .collect(),
            None => {
                out.complete = false;
                SAMPLE_VALUES.iter().map(|v| Rational::from_integer((*v).into())).collect()
            }
        }
    };
    for v in values {
        let reduced: Vec<MultiPoly> = gens
            .iter()
            .map(|g| g.eval_var(last, &v))
            .filter(|g| !g.is_zero())
            .collect();
        if reduced.iter().any(|g| g.is_constant()) {
            continue;
        }
        suffix.push(v);
        solve(&reduced, last, budget, suffix, out)?;
        suffix.pop();
        if out.points.len() >= budget {
            out.complete = false;
            return Ok(());
        }
    }
    Ok(())
}
