//! The assignment state over all `p` and canonical `q` variables.
//!
//! Internally vertices and positions are 0-based and every variable has a
//! dense cell id: `p(x,k)` is `x*n + k`, and canonical `q` cells follow at
//! offset `n^2`. Only the `i < j` half of the Q matrix is stored; the other
//! orientation and the diagonal `q(u,i,u,i) = p(u,i)` are views.
//!
//! Every Free -> Zero/One write is appended to a trail. Snapshots are trail
//! marks and restoring rewinds the trail. The unprocessed suffix of the trail
//! is also the propagation queue (see `closure`).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::inducer::{total_inducers, Inducer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[repr(u8)]
pub enum VarState {
    Free,
    Zero,
    One,
}

impl VarState {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            VarState::One
        } else {
            VarState::Zero
        }
    }
}

/// A variable addressed by 1-based labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cell {
    P { u: usize, i: usize },
    Q(Inducer),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::P { u, i } => write!(f, "p({u},{i})"),
            Cell::Q(ind) => write!(f, "q{ind}"),
        }
    }
}

/// Index arithmetic shared by every lattice of one size.
#[derive(Debug)]
pub(crate) struct Geometry {
    pub n: usize,
    /// `n * n`, the offset of the first q cell.
    pub np: usize,
    pub nq: usize,
    /// rank -> (k, l) with k < l
    pairs: Vec<(u16, u16)>,
    /// k*n + l -> rank, valid for k < l
    pair_rank: Vec<u32>,
    /// q index -> (x, k, y, l)
    table: Vec<[u16; 4]>,
    /// q indices sorted by canonical (u, i, v, j)
    pub lex: Vec<u32>,
}

impl Geometry {
    fn new(n: usize) -> Self {
        let mut pairs = Vec::new();
        let mut pair_rank = vec![u32::MAX; n * n];
        for k in 0..n {
            for l in k + 1..n {
                pair_rank[k * n + l] = pairs.len() as u32;
                pairs.push((k as u16, l as u16));
            }
        }
        let nq = total_inducers(n);
        let mut geo = Self {
            n,
            np: n * n,
            nq,
            pairs,
            pair_rank,
            table: Vec::new(),
            lex: Vec::new(),
        };
        geo.table = (0..nq)
            .map(|q| {
                let (x, k, y, l) = geo.decode_slow(q);
                [x as u16, k as u16, y as u16, l as u16]
            })
            .collect();
        let mut lex: Vec<u32> = (0..nq as u32).collect();
        lex.sort_by_key(|&q| geo.decode(q as usize));
        geo.lex = lex;
        geo
    }

    /// Canonical q index of `{(x,k),(y,l)}` with `k < l`, `x != y`.
    #[inline]
    pub fn q_index(&self, x: usize, k: usize, y: usize, l: usize) -> usize {
        let n = self.n;
        let rank = self.pair_rank[k * n + l] as usize;
        rank * n * (n - 1) + x * (n - 1) + if y > x { y - 1 } else { y }
    }

    /// q index linking p cells `a` and `b` (distinct vertices and positions).
    #[inline]
    pub fn q_between(&self, a: usize, b: usize) -> usize {
        let n = self.n;
        let (x, k) = (a / n, a % n);
        let (y, l) = (b / n, b % n);
        if k < l {
            self.q_index(x, k, y, l)
        } else {
            self.q_index(y, l, x, k)
        }
    }

    /// `(x, k, y, l)` with `k < l`.
    #[inline]
    pub fn decode(&self, q: usize) -> (usize, usize, usize, usize) {
        let [x, k, y, l] = self.table[q];
        (x as usize, k as usize, y as usize, l as usize)
    }

    fn decode_slow(&self, q: usize) -> (usize, usize, usize, usize) {
        let n = self.n;
        let per = n * (n - 1);
        let (k, l) = self.pairs[q / per];
        let rest = q % per;
        let x = rest / (n - 1);
        let yr = rest % (n - 1);
        let y = if yr >= x { yr + 1 } else { yr };
        (x, k as usize, y, l as usize)
    }

    pub fn inducer(&self, q: usize) -> Inducer {
        let (x, k, y, l) = self.decode(q);
        Inducer {
            u: x + 1,
            i: k + 1,
            v: y + 1,
            j: l + 1,
        }
    }

    pub fn q_of(&self, ind: &Inducer) -> Result<usize> {
        let n = self.n;
        if [ind.u, ind.i, ind.v, ind.j].iter().any(|&x| x == 0 || x > n) || ind.u == ind.v || ind.i >= ind.j {
            return Err(Error::InvalidInducer {
                u: ind.u,
                i: ind.i,
                v: ind.v,
                j: ind.j,
                reason: "not a canonical inducer for this lattice",
            });
        }
        Ok(self.q_index(ind.u - 1, ind.i - 1, ind.v - 1, ind.j - 1))
    }
}

/// Opaque handle returned by [`VarLattice::snapshot`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Snapshot {
    depth: usize,
    id: u64,
}

#[derive(Debug, Clone)]
struct Mark {
    id: u64,
    trail_len: usize,
    contradiction: bool,
}

#[derive(Clone)]
pub struct VarLattice {
    pub(crate) geo: Arc<Geometry>,
    pub(crate) cells: Vec<VarState>,
    pub(crate) row_live: Vec<u32>,
    pub(crate) col_live: Vec<u32>,
    /// live cells of block `a` towards partner vertex `y`, at `a*n + y`
    pub(crate) line_v: Vec<u32>,
    /// live cells of block `a` towards partner position `l`, at `a*n + l`
    pub(crate) line_j: Vec<u32>,
    pub(crate) trail: Vec<u32>,
    pub(crate) head: usize,
    pub(crate) contradiction: bool,
    marks: Vec<Mark>,
    next_mark: u64,
    zeros_p: usize,
    ones_p: usize,
    zeros_q: usize,
    ones_q: usize,
}

impl fmt::Debug for VarLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VarLattice")
            .field("n", &self.n())
            .field("free_counts", &self.count_free())
            .field("contradiction", &self.contradiction)
            .finish()
    }
}

impl PartialEq for VarLattice {
    /// Equal when both hold the same assignment.
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n() && self.cells == other.cells && self.contradiction == other.contradiction
    }
}

impl VarLattice {
    /// A lattice with every variable Free.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionMismatch(format!("lattice needs n >= 2, got {n}")));
        }
        if n > u16::MAX as usize {
            return Err(Error::DimensionMismatch(format!("n = {n} is too large")));
        }
        Ok(Self::with_geometry(Arc::new(Geometry::new(n))))
    }

    pub(crate) fn with_geometry(geo: Arc<Geometry>) -> Self {
        let n = geo.n;
        let total = geo.np + geo.nq;
        Self {
            cells: vec![VarState::Free; total],
            row_live: vec![n as u32; n],
            col_live: vec![n as u32; n],
            line_v: vec![(n - 1) as u32; n * n * n],
            line_j: vec![(n - 1) as u32; n * n * n],
            trail: Vec::new(),
            head: 0,
            contradiction: false,
            marks: Vec::new(),
            next_mark: 0,
            zeros_p: 0,
            ones_p: 0,
            zeros_q: 0,
            ones_q: 0,
            geo,
        }
    }

    pub fn n(&self) -> usize {
        self.geo.n
    }

    /// Number of stored cells: `n^2` p cells plus all canonical q cells.
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Every cell state, p cells first.
    pub fn states(&self) -> &[VarState] {
        &self.cells
    }

    pub fn is_contradicted(&self) -> bool {
        self.contradiction
    }

    fn check_label(&self, x: usize) -> Result<usize> {
        if x == 0 || x > self.n() {
            Err(Error::VertexOutOfRange {
                vertex: x,
                order: self.n(),
            })
        } else {
            Ok(x - 1)
        }
    }

    pub fn p(&self, u: usize, i: usize) -> Result<VarState> {
        let (x, k) = (self.check_label(u)?, self.check_label(i)?);
        Ok(self.cells[x * self.n() + k])
    }

    /// Reads `q(u,i,v,j)` in either orientation. The diagonal reads `p(u,i)`
    /// and the structural zeros of the Q matrix read Zero.
    pub fn q(&self, u: usize, i: usize, v: usize, j: usize) -> Result<VarState> {
        let (x, k, y, l) = (
            self.check_label(u)?,
            self.check_label(i)?,
            self.check_label(v)?,
            self.check_label(j)?,
        );
        let n = self.n();
        if x == y && k == l {
            return Ok(self.cells[x * n + k]);
        }
        if x == y || k == l {
            return Ok(VarState::Zero);
        }
        Ok(self.cells[self.geo.np + self.geo.q_between(x * n + k, y * n + l)])
    }

    pub fn q_of(&self, ind: &Inducer) -> Result<VarState> {
        let q = self.geo.q_of(ind)?;
        Ok(self.cells[self.geo.np + q])
    }

    pub fn state(&self, cell: Cell) -> Result<VarState> {
        match cell {
            Cell::P { u, i } => self.p(u, i),
            Cell::Q(ind) => self.q_of(&ind),
        }
    }

    pub(crate) fn cell_id(&self, cell: Cell) -> Result<usize> {
        match cell {
            Cell::P { u, i } => {
                let (x, k) = (self.check_label(u)?, self.check_label(i)?);
                Ok(x * self.n() + k)
            }
            Cell::Q(ind) => Ok(self.geo.np + self.geo.q_of(&ind)?),
        }
    }

    pub(crate) fn cell_of(&self, id: usize) -> Cell {
        let n = self.n();
        if id < self.geo.np {
            Cell::P {
                u: id / n + 1,
                i: id % n + 1,
            }
        } else {
            Cell::Q(self.geo.inducer(id - self.geo.np))
        }
    }

    /// Writes a value without propagating. Assigning the recorded value is a
    /// no-op; assigning the opposite value marks the lattice contradicted and
    /// returns false.
    pub fn assign(&mut self, cell: Cell, value: VarState) -> Result<bool> {
        if value == VarState::Free {
            return Err(Error::Config("cannot assign Free".into()));
        }
        let id = self.cell_id(cell)?;
        Ok(self.set(id, value))
    }

    #[inline]
    pub(crate) fn set(&mut self, id: usize, value: VarState) -> bool {
        let cur = self.cells[id];
        if cur == value {
            return true;
        }
        if cur != VarState::Free {
            self.contradiction = true;
            return false;
        }
        self.cells[id] = value;
        let is_p = id < self.geo.np;
        match (value, is_p) {
            (VarState::Zero, true) => {
                self.zeros_p += 1;
                let n = self.n();
                self.row_live[id / n] -= 1;
                self.col_live[id % n] -= 1;
            }
            (VarState::Zero, false) => {
                self.zeros_q += 1;
                self.adjust_lines(id - self.geo.np, false);
            }
            (_, true) => self.ones_p += 1,
            (_, false) => self.ones_q += 1,
        }
        self.trail.push(id as u32);
        true
    }

    #[inline]
    fn adjust_lines(&mut self, q: usize, increment: bool) {
        let n = self.n();
        let (x, k, y, l) = self.geo.decode(q);
        let a = x * n + k;
        let b = y * n + l;
        let slots = [(a * n + y, a * n + l), (b * n + x, b * n + k)];
        for (sv, sj) in slots {
            if increment {
                self.line_v[sv] += 1;
                self.line_j[sj] += 1;
            } else {
                self.line_v[sv] -= 1;
                self.line_j[sj] -= 1;
            }
        }
    }

    fn unset(&mut self, id: usize) {
        let value = std::mem::replace(&mut self.cells[id], VarState::Free);
        let is_p = id < self.geo.np;
        match (value, is_p) {
            (VarState::Zero, true) => {
                self.zeros_p -= 1;
                let n = self.n();
                self.row_live[id / n] += 1;
                self.col_live[id % n] += 1;
            }
            (VarState::Zero, false) => {
                self.zeros_q -= 1;
                self.adjust_lines(id - self.geo.np, true);
            }
            (VarState::One, true) => self.ones_p -= 1,
            (VarState::One, false) => self.ones_q -= 1,
            (VarState::Free, _) => unreachable!("trail holds only assigned cells"),
        }
    }

    /// Current trail length, used as a lightweight mark.
    #[inline]
    pub(crate) fn trail_len(&self) -> usize {
        self.trail.len()
    }

    /// Rewinds every write after `len` and clears a contradiction raised
    /// after it. `len` must come from a quiescent consistent state.
    pub(crate) fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let id = self.trail.pop().expect("nonempty") as usize;
            self.unset(id);
        }
        self.head = self.head.min(len);
        self.contradiction = false;
    }

    /// Marks the current state for a later [`VarLattice::restore`].
    pub fn snapshot(&mut self) -> Snapshot {
        let id = self.next_mark;
        self.next_mark += 1;
        self.marks.push(Mark {
            id,
            trail_len: self.trail.len(),
            contradiction: self.contradiction,
        });
        Snapshot {
            depth: self.marks.len() - 1,
            id,
        }
    }

    fn pop_mark(&mut self, s: Snapshot) -> Result<Mark> {
        match self.marks.get(s.depth) {
            Some(m) if m.id == s.id => {
                self.marks.truncate(s.depth + 1);
                Ok(self.marks.pop().expect("present"))
            }
            _ => Err(Error::StaleSnapshot),
        }
    }

    /// Returns to the snapshotted state. Restoring an outer snapshot also
    /// discards any inner ones still open.
    pub fn restore(&mut self, s: Snapshot) -> Result<()> {
        let m = self.pop_mark(s)?;
        self.undo_to(m.trail_len);
        self.contradiction = m.contradiction;
        Ok(())
    }

    /// Keeps every change and drops the snapshot.
    pub fn release(&mut self, s: Snapshot) -> Result<()> {
        self.pop_mark(s).map(|_| ())
    }

    /// `(p, q)` counts of cells not Zero.
    pub fn count_free(&self) -> (usize, usize) {
        (self.geo.np - self.zeros_p, self.geo.nq - self.zeros_q)
    }

    /// `(p, q)` counts of cells still unassigned.
    pub fn count_unassigned(&self) -> (usize, usize) {
        (
            self.geo.np - self.zeros_p - self.ones_p,
            self.geo.nq - self.zeros_q - self.ones_q,
        )
    }

    pub fn zero_q_count(&self) -> usize {
        self.zeros_q
    }

    pub fn one_q_count(&self) -> usize {
        self.ones_q
    }

    /// True when no variable is Free.
    pub fn is_complete(&self) -> bool {
        self.zeros_p + self.ones_p == self.geo.np && self.zeros_q + self.ones_q == self.geo.nq
    }

    /// Canonical inducers whose q cell is in `state`, in `(u,i,v,j)` order.
    pub fn inducers_in(&self, state: VarState) -> Vec<Inducer> {
        let np = self.geo.np;
        self.geo
            .lex
            .iter()
            .filter(|&&q| self.cells[np + q as usize] == state)
            .map(|&q| self.geo.inducer(q as usize))
            .collect()
    }

    /// Writes since the trail had length `from`, in write order.
    pub(crate) fn written_since(&self, from: usize) -> impl Iterator<Item = usize> + '_ {
        self.trail[from..].iter().map(|&c| c as usize)
    }

    /// `perm[x] = k` if every p row holds exactly one One.
    pub(crate) fn integer_positions(&self) -> Option<Vec<usize>> {
        let n = self.n();
        (0..n)
            .map(|x| {
                let mut ones = (0..n).filter(|&k| self.cells[x * n + k] == VarState::One);
                let k = ones.next()?;
                ones.next().is_none().then_some(k)
            })
            .collect()
    }
}
