//! Exhaustive enumeration of plane partitions for small `n`.
//!
//! This is ground truth for every exact identity elsewhere in the crate, so it
//! deliberately shares no code with the generating-function side.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// Largest `n` the enumerator accepts.
pub const MAX_ORACLE_N: u32 = 20;

/// A plane partition stored as rows of positive parts.
///
/// Rows and columns are weakly decreasing and row lengths weakly decrease.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanePartition {
    rows: Vec<Vec<u32>>,
}

impl PlanePartition {
    /// Validates the row array. Zero entries are not allowed; empty trailing
    /// rows are dropped.
    pub fn new(mut rows: Vec<Vec<u32>>) -> Result<Self> {
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        let invalid = |detail: &str| Error::Domain { op: "plane partition", detail: detail.to_string() };
        for (h, row) in rows.iter().enumerate() {
            if row.is_empty() {
                return Err(invalid("empty row before a non-empty one"));
            }
            if row.contains(&0) {
                return Err(invalid("parts must be positive"));
            }
            if row.windows(2).any(|w| w[0] < w[1]) {
                return Err(invalid("rows must be weakly decreasing"));
            }
            if h > 0 {
                let above = &rows[h - 1];
                if row.len() > above.len() {
                    return Err(invalid("row lengths must be weakly decreasing"));
                }
                if row.iter().zip(above).any(|(v, a)| v > a) {
                    return Err(invalid("columns must be weakly decreasing"));
                }
            }
        }
        Ok(PlanePartition { rows })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn volume(&self) -> u32 {
        self.rows.iter().flatten().sum()
    }

    /// Sum of the diagonal parts.
    pub fn trace(&self) -> u32 {
        self.rows.iter().enumerate().filter_map(|(h, r)| r.get(h)).sum()
    }

    /// Largest part (height of the solid diagram).
    pub fn largest_part(&self) -> u32 {
        self.rows.first().and_then(|r| r.first()).copied().unwrap_or(0)
    }

    pub fn num_rows(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn num_columns(&self) -> u32 {
        self.rows.first().map_or(0, |r| r.len() as u32)
    }

    /// Unit cells `(h, j, k)`, 1-based, of the solid diagram.
    pub fn cells(&self) -> impl Iterator<Item = [u32; 3]> + '_ {
        self.rows.iter().enumerate().flat_map(|(h, row)| {
            row.iter().enumerate().flat_map(move |(j, &v)| (1..=v).map(move |k| [h as u32 + 1, j as u32 + 1, k]))
        })
    }

    /// Rebuilds the partition of an order-ideal cell set.
    fn from_cells(cells: impl IntoIterator<Item = [u32; 3]>) -> Self {
        let mut heights: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for [h, j, _] in cells {
            *heights.entry((h, j)).or_default() += 1;
        }
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for ((h, j), v) in heights {
            let (h, j) = (h as usize - 1, j as usize - 1);
            if rows.len() <= h {
                rows.resize(h + 1, Vec::new());
            }
            let row = &mut rows[h];
            if row.len() <= j {
                row.resize(j + 1, 0);
            }
            row[j] = v;
        }
        PlanePartition { rows }
    }
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows.iter().map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// A permutation of the three coordinate axes: new coordinate `i` is old
/// coordinate `self[i]`. Axis 0 indexes rows, 1 columns, 2 heights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AxisPermutation([usize; 3]);

impl AxisPermutation {
    pub const IDENTITY: AxisPermutation = AxisPermutation([0, 1, 2]);

    pub fn new(map: [usize; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &i in &map {
            if i > 2 || seen[i] {
                return Err(Error::InvalidPermutation(map));
            }
            seen[i] = true;
        }
        Ok(AxisPermutation(map))
    }

    pub fn all() -> [AxisPermutation; 6] {
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]].map(AxisPermutation)
    }

    pub fn map(self) -> [usize; 3] {
        self.0
    }

    pub fn apply<T: Copy>(self, v: [T; 3]) -> [T; 3] {
        [v[self.0[0]], v[self.0[1]], v[self.0[2]]]
    }

    /// Permutation equal to applying `self` first, then `next`.
    pub fn then(self, next: AxisPermutation) -> AxisPermutation {
        AxisPermutation([self.0[next.0[0]], self.0[next.0[1]], self.0[next.0[2]]])
    }

    pub fn inverse(self) -> AxisPermutation {
        let mut inv = [0; 3];
        for (i, &s) in self.0.iter().enumerate() {
            inv[s] = i;
        }
        AxisPermutation(inv)
    }
}

/// Permutes the solid diagram of `p` and reads back the plane partition.
pub fn axis_permute(p: &PlanePartition, perm: AxisPermutation) -> PlanePartition {
    PlanePartition::from_cells(p.cells().map(|c| perm.apply(c)))
}

fn check_n(n: u32) -> Result<()> {
    if !(1..=MAX_ORACLE_N).contains(&n) {
        return Err(Error::range("n", n, 1, i64::from(MAX_ORACLE_N)));
    }
    Ok(())
}

/// Calls `visit` once for every plane partition of `n`, holding only the
/// partition currently being built. Returns the number visited.
pub fn enumerate<F: FnMut(&PlanePartition)>(n: u32, mut visit: F) -> Result<u64> {
    check_n(n)?;
    let mut state = Walker { current: PlanePartition { rows: Vec::new() }, count: 0 };
    state.rows(n, &mut visit);
    Ok(state.count)
}

/// All plane partitions of `n`, collected. Only for tests and tiny `n`.
pub fn collect(n: u32) -> Result<Vec<PlanePartition>> {
    let mut out = Vec::new();
    enumerate(n, |p| out.push(p.clone()))?;
    Ok(out)
}

struct Walker {
    current: PlanePartition,
    count: u64,
}

impl Walker {
    fn rows<F: FnMut(&PlanePartition)>(&mut self, remaining: u32, visit: &mut F) {
        if remaining == 0 {
            self.count += 1;
            visit(&self.current);
            return;
        }
        // bounds for the next row come from the row above, if any
        let bound: Vec<u32> = match self.current.rows.last() {
            Some(r) => r.clone(),
            None => vec![remaining; remaining as usize],
        };
        let mut row = Vec::with_capacity(bound.len());
        self.row_entries(&bound, &mut row, remaining, remaining, visit);
    }

    /// Extends `row` one entry at a time; every non-empty prefix is a
    /// candidate row.
    fn row_entries<F: FnMut(&PlanePartition)>(
        &mut self,
        bound: &[u32],
        row: &mut Vec<u32>,
        budget: u32,
        remaining: u32,
        visit: &mut F,
    ) {
        let j = row.len();
        if j == bound.len() {
            return;
        }
        let cap = bound[j].min(row.last().copied().unwrap_or(u32::MAX)).min(budget);
        for v in 1..=cap {
            row.push(v);
            self.current.rows.push(row.clone());
            let used = remaining - budget + v;
            self.rows(remaining - used, visit);
            self.current.rows.pop();
            self.row_entries(bound, row, budget - v, remaining, visit);
            row.pop();
        }
    }
}

/// Counts and the four distributions for all plane partitions of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleStats {
    pub n: u32,
    pub count: u64,
    pub trace: BTreeMap<u32, u64>,
    /// Largest part `X`.
    pub height: BTreeMap<u32, u64>,
    /// Number of rows `Y`.
    pub width: BTreeMap<u32, u64>,
    /// Number of columns `Z`.
    pub depth: BTreeMap<u32, u64>,
}

impl OracleStats {
    pub fn symmetric(&self) -> bool {
        self.height == self.width && self.width == self.depth
    }

    /// Number of partitions with statistic `<= m`.
    pub fn cumulative(dist: &BTreeMap<u32, u64>, m: u32) -> u64 {
        dist.range(..=m).map(|(_, c)| c).sum()
    }
}

pub fn statistics(n: u32) -> Result<OracleStats> {
    let mut s = OracleStats {
        n,
        count: 0,
        trace: BTreeMap::new(),
        height: BTreeMap::new(),
        width: BTreeMap::new(),
        depth: BTreeMap::new(),
    };
    s.count = enumerate(n, |p| {
        *s.trace.entry(p.trace()).or_default() += 1;
        *s.height.entry(p.largest_part()).or_default() += 1;
        *s.width.entry(p.num_rows()).or_default() += 1;
        *s.depth.entry(p.num_columns()).or_default() += 1;
    })?;
    Ok(s)
}

/// Counts plane partitions of `n` with largest part `<= m` and at most `l`
/// rows, the two-parameter restriction.
pub fn count_bounded(n: u32, max_part: u32, max_rows: u32) -> Result<u64> {
    let mut c = 0;
    enumerate(n, |p| {
        if p.largest_part() <= max_part && p.num_rows() <= max_rows {
            c += 1;
        }
    })?;
    Ok(c)
}

/// `(X, Y, Z)` of a partition, indexed by the axis each measures: rows (axis
/// 0), columns (axis 1), heights (axis 2).
pub fn extents(p: &PlanePartition) -> [u32; 3] {
    [p.num_rows(), p.num_columns(), p.largest_part()]
}

/// Checks that every axis permutation is a volume-preserving bijection on the
/// partitions of `n`.
pub fn permutation_is_bijection(n: u32, perm: AxisPermutation) -> Result<bool> {
    let mut images = BTreeSet::new();
    let mut ok = true;
    let total = enumerate(n, |p| {
        let q = axis_permute(p, perm);
        ok &= q.volume() == n && PlanePartition::new(q.rows.clone()).is_ok();
        images.insert(q);
    })?;
    Ok(ok && images.len() as u64 == total)
}
