//! Limits of Cauchy sequences of sequences, taken along the diagonal.
//!
//! A [`Grid`] supplies one sequence per row. When every row is Cauchy and
//! the rows are Cauchy among themselves in the metric `D`, the diagonal
//! `n -> row_n(n)` is the limit: `D(row_j, diagonal)` drops below any
//! `2^-ell (1 + i)` for large `j`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::probe::{cauchy_check, gap_constant, gap_search, seq_lt, CauchyVerdict, Elements, Horizon, Status};
use super::{lift::metric_d, Provenance, SequenceKind, StateSequence};
use crate::arith::Part;
use crate::error::{Error, Result};
use crate::state::LatticeSite;
use crate::superposition::Superposition;

pub type RowFn = Arc<dyn Fn(usize) -> StateSequence + Send + Sync>;

#[derive(Clone)]
pub struct Grid {
    rows: RowFn,
    site: LatticeSite,
    label: String,
}

impl Grid {
    /// `rows(m)` is the `m`th row, `m >= 1`; rows are moved to `site`.
    pub fn new<F>(label: impl Into<String>, site: LatticeSite, rows: F) -> Self
    where
        F: Fn(usize) -> StateSequence + Send + Sync + 'static,
    {
        Grid { rows: Arc::new(rows), site, label: label.into() }
    }

    /// A grid of elements: row `m` is the sequence `n -> f(n, m)`.
    pub fn from_fn<F>(label: impl Into<String>, site: LatticeSite, f: F) -> Self
    where
        F: Fn(usize, usize) -> Superposition + Send + Sync + 'static,
    {
        let label = label.into();
        let f = Arc::new(f);
        let name = label.clone();
        Grid::new(label, site, move |m| {
            let f = f.clone();
            StateSequence::custom(format!("{name}[{m}]"), site, move |n| f(n, m))
        })
    }

    pub fn row(&self, m: usize) -> StateSequence {
        assert!(m >= 1, "row indices start at 1");
        (self.rows)(m).translate(self.site)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `n -> row_n(n)`.
    pub fn diagonal(&self) -> StateSequence {
        let rows = self.rows.clone();
        let site = self.site;
        StateSequence::from_parts(
            Arc::new(move |n| rows(n).at(n)),
            site,
            SequenceKind::Custom,
            Provenance::Custom(format!("diagonal({})", self.label)),
            None,
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagonalLimit {
    #[serde(skip)]
    pub sequence: StateSequence,
    /// The Cauchy verdict of the diagonal itself.
    pub cauchy: CauchyVerdict,
    /// `ell -> h`: rows past `h` are within `2^-ell (1 + i)` of the diagonal.
    pub convergence: BTreeMap<u32, usize>,
    pub status: Status,
}

/// `D(a, b) < 2^-ell (1 + i)` in both components, with the gap searched
/// over `2^-ell'` for `ell < ell' <= ell + ell_max`.
struct Closeness<'a> {
    hz: &'a Horizon,
    gaps: HashMap<u32, (StateSequence, Elements)>,
}

impl<'a> Closeness<'a> {
    fn new(hz: &'a Horizon) -> Self {
        Closeness { hz, gaps: HashMap::new() }
    }

    fn below(&mut self, d: &StateSequence, d_elems: Option<&Elements>, ell: u32) -> bool {
        let hz = self.hz;
        let (g, g_elems) = self.gaps.entry(ell).or_insert_with(|| {
            let g = gap_constant(d, ell);
            let e = Elements::new(&g, hz.extent());
            (g, e)
        });
        match d_elems {
            None => seq_lt(d, g, Part::Real, hz).holds() && seq_lt(d, g, Part::Imaginary, hz).holds(),
            Some(e) => {
                let ells = ell + 1..=ell + hz.ell_max;
                gap_search(e, g_elems, Part::Real, ells.clone(), hz).holds()
                    && gap_search(e, g_elems, Part::Imaginary, ells, hz).holds()
            }
        }
    }
}

fn metric_elements(d: &StateSequence, hz: &Horizon) -> Option<Elements> {
    (d.kind() != SequenceKind::Constant).then(|| Elements::new(d, hz.extent()))
}

/// First `h <= h_max` such that `ok(j)` holds for every `j` in
/// `(h, h + window]` and in the final window.
fn find_h(hz: &Horizon, mut ok: impl FnMut(usize) -> bool) -> Option<usize> {
    let mut window = |h: usize| (h + 1..=h + hz.window).all(&mut ok);
    if !window(hz.h_max) {
        return None;
    }
    (1..=hz.h_max).find(|&h| window(h))
}

/// The diagonal limit of a grid of sequences on the horizon `hz`.
///
/// Each row must be Cauchy and the rows must be Cauchy in `D`; otherwise
/// the grid is rejected with [`Error::RowNotCauchy`] or
/// [`Error::RowsNotCauchy`].
pub fn diagonal_limit(grid: &Grid, hz: &Horizon) -> Result<DiagonalLimit> {
    let rows: Vec<StateSequence> = (1..=hz.extent()).map(|m| grid.row(m)).collect();
    for (i, r) in rows.iter().enumerate() {
        if !cauchy_check(r, hz).holds() {
            return Err(Error::RowNotCauchy { row: i + 1 });
        }
    }
    let mut close = Closeness::new(hz);
    let mut metrics: HashMap<(usize, usize), (StateSequence, Option<Elements>)> = HashMap::new();
    let mut verdicts: HashMap<(usize, usize, u32), bool> = HashMap::new();
    for ell in 1..=hz.ell_max {
        let mut pair_ok = |j: usize, k: usize| {
            let key = (j.min(k), j.max(k));
            if key.0 == key.1 {
                return true;
            }
            if let Some(v) = verdicts.get(&(key.0, key.1, ell)) {
                return *v;
            }
            let (d, e) = metrics.entry(key).or_insert_with(|| {
                let d = metric_d(&rows[key.0 - 1], &rows[key.1 - 1], hz);
                let e = metric_elements(&d, hz);
                (d, e)
            });
            let v = close.below(d, e.as_ref(), ell);
            verdicts.insert((key.0, key.1, ell), v);
            v
        };
        let mut window_ok = |h: usize| (h + 1..=h + hz.window).all(|j| (h + 1..=h + hz.window).all(|k| pair_ok(j, k)));
        if !(window_ok(hz.h_max) && (1..=hz.h_max).any(&mut window_ok)) {
            return Err(Error::RowsNotCauchy { ell });
        }
    }
    let diagonal = grid.diagonal();
    let cauchy = cauchy_check(&diagonal, hz);
    let mut to_diag: HashMap<usize, (StateSequence, Option<Elements>)> = HashMap::new();
    let mut convergence = BTreeMap::new();
    for ell in 1..=hz.ell_max {
        let mut memo: HashMap<usize, bool> = HashMap::new();
        let h = find_h(hz, |j| {
            if let Some(v) = memo.get(&j) {
                return *v;
            }
            let (d, e) = to_diag.entry(j).or_insert_with(|| {
                let d = metric_d(&rows[j - 1], &diagonal, hz);
                let e = metric_elements(&d, hz);
                (d, e)
            });
            let v = close.below(d, e.as_ref(), ell);
            memo.insert(j, v);
            v
        });
        if let Some(h) = h {
            convergence.insert(ell, h);
        }
    }
    let status = if cauchy.holds() && convergence.len() == hz.ell_max as usize {
        Status::Supported
    } else {
        Status::Inconclusive
    };
    Ok(DiagonalLimit { sequence: diagonal, cauchy, convergence, status })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{constant_seq, cycle_seq, frozen_prefix_seq, BitPattern, Tail};
    use crate::state::StringState;

    fn hz() -> Horizon {
        Horizon::new(4, 8, 4).unwrap()
    }

    #[test]
    fn truncations_of_a_third_converge() {
        let third = BitPattern::parse("0(01)").unwrap();
        let grid = Grid::new("thirds", LatticeSite::default(), move |m| {
            constant_seq(&StringState::real(crate::state::RealComponent::new(
                crate::state::Sign::Plus,
                third.truncate(0, -(m as i64)),
            )))
        });
        let lim = diagonal_limit(&grid, &hz()).unwrap();
        assert_eq!(lim.status, Status::Supported);
        assert_eq!(lim.sequence.at(6).as_basis().unwrap().to_string(), "0+010101");
    }

    #[test]
    fn element_grid_of_thirds() {
        let third = BitPattern::parse("0(01)").unwrap();
        let grid = Grid::from_fn("thirds", LatticeSite::default(), move |n, m| {
            let d = third.truncate(0, -(n.min(m) as i64));
            Superposition::basis(StringState::real(crate::state::RealComponent::new(crate::state::Sign::Plus, d)))
        });
        let lim = diagonal_limit(&grid, &hz()).unwrap();
        assert_eq!(lim.status, Status::Supported);
    }

    #[test]
    fn rows_of_exam1_shifted() {
        let grid = Grid::new("exam1", LatticeSite::default(), |_| {
            frozen_prefix_seq(&BitPattern::zeros(), None, Tail::Plain, LatticeSite::default())
        });
        let lim = diagonal_limit(&grid, &hz()).unwrap();
        assert_eq!(lim.status, Status::Supported);
    }

    #[test]
    fn rejections() {
        let zero: StringState = "0+".parse().unwrap();
        let one: StringState = "1+".parse().unwrap();
        let bad_row = Grid::new("bad", LatticeSite::default(), move |_| {
            cycle_seq(&[zero.clone(), one.clone()], LatticeSite::default())
        });
        assert!(matches!(diagonal_limit(&bad_row, &hz()), Err(Error::RowNotCauchy { row: 1 })));
        let wandering = Grid::new("wander", LatticeSite::default(), |m| {
            constant_seq(&(if m % 2 == 0 { "1+" } else { "0+" }).parse().unwrap())
        });
        assert!(matches!(diagonal_limit(&wandering, &hz()), Err(Error::RowsNotCauchy { ell: 1 })));
    }
}
