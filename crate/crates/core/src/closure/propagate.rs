//! Unit propagation over the row/column sum structure of the lattice.
//!
//! Rules, applied to fixpoint:
//! - a p row or column with one live cell forces it One; with none it is a
//!   contradiction
//! - a One p cell zeroes the rest of its row and column
//! - a Zero p cell zeroes every q cell of its block
//! - a block line (fixed partner vertex, or fixed partner position) with no
//!   live q cell zeroes the block's p cell
//! - a One q cell makes both of its p cells One
//! - under a One p cell, a block line with one live q cell forces it One
//! - a One q cell zeroes the other cells on its four lines
//!
//! Every rule only moves cells away from Free, so the least fixpoint is
//! independent of firing order.

use crate::model::{VarLattice, VarState};

impl VarLattice {
    /// Processes queued writes until the queue drains or a contradiction is
    /// raised. `pick(k)` chooses which of the `k` pending entries fires next.
    pub(crate) fn run_queue(&mut self, mut pick: Option<&mut dyn FnMut(usize) -> usize>) -> bool {
        if self.contradiction {
            return false;
        }
        while self.head < self.trail.len() {
            if let Some(pick) = pick.as_deref_mut() {
                let pending = self.trail.len() - self.head;
                let r = self.head + pick(pending) % pending;
                self.trail.swap(self.head, r);
            }
            let id = self.trail[self.head] as usize;
            self.head += 1;
            if !self.fire(id) {
                self.contradiction = true;
                return false;
            }
        }
        true
    }

    fn fire(&mut self, id: usize) -> bool {
        let n = self.n();
        let np = self.geo.np;
        let value = self.cells[id];
        if id < np {
            let (x, k) = (id / n, id % n);
            match value {
                VarState::One => {
                    for kk in (0..n).filter(|&kk| kk != k) {
                        if !self.set(x * n + kk, VarState::Zero) {
                            return false;
                        }
                    }
                    for xx in (0..n).filter(|&xx| xx != x) {
                        if !self.set(xx * n + k, VarState::Zero) {
                            return false;
                        }
                    }
                    for y in (0..n).filter(|&y| y != x) {
                        if !self.check_line(id, Line::Vertex(y)) {
                            return false;
                        }
                    }
                    for l in (0..n).filter(|&l| l != k) {
                        if !self.check_line(id, Line::Position(l)) {
                            return false;
                        }
                    }
                }
                VarState::Zero => {
                    if !self.check_row(x) || !self.check_col(k) {
                        return false;
                    }
                    for y in (0..n).filter(|&y| y != x) {
                        for l in (0..n).filter(|&l| l != k) {
                            let q = self.geo.q_between(id, y * n + l);
                            if !self.set(np + q, VarState::Zero) {
                                return false;
                            }
                        }
                    }
                }
                VarState::Free => unreachable!("queued cells are assigned"),
            }
        } else {
            let q = id - np;
            let (x, k, y, l) = self.geo.decode(q);
            let a = x * n + k;
            let b = y * n + l;
            match value {
                VarState::One => {
                    if !self.set(a, VarState::One) || !self.set(b, VarState::One) {
                        return false;
                    }
                    for (from, to) in [(a, b), (b, a)] {
                        let (tx, tk) = (to / n, to % n);
                        // from's line towards vertex tx, and towards position tk
                        for ll in (0..n).filter(|&ll| ll != tk && ll != from % n) {
                            let other = self.geo.q_between(from, tx * n + ll);
                            if !self.set(np + other, VarState::Zero) {
                                return false;
                            }
                        }
                        for yy in (0..n).filter(|&yy| yy != tx && yy != from / n) {
                            let other = self.geo.q_between(from, yy * n + tk);
                            if !self.set(np + other, VarState::Zero) {
                                return false;
                            }
                        }
                    }
                }
                VarState::Zero => {
                    let lines = [
                        (a, Line::Vertex(y)),
                        (a, Line::Position(l)),
                        (b, Line::Vertex(x)),
                        (b, Line::Position(k)),
                    ];
                    for (block, line) in lines {
                        if !self.check_line(block, line) {
                            return false;
                        }
                    }
                }
                VarState::Free => unreachable!("queued cells are assigned"),
            }
        }
        true
    }

    fn check_row(&mut self, x: usize) -> bool {
        let n = self.n();
        match self.row_live[x] {
            0 => false,
            1 => {
                let k = (0..n)
                    .find(|&k| self.cells[x * n + k] != VarState::Zero)
                    .expect("one live cell");
                self.set(x * n + k, VarState::One)
            }
            _ => true,
        }
    }

    fn check_col(&mut self, k: usize) -> bool {
        let n = self.n();
        match self.col_live[k] {
            0 => false,
            1 => {
                let x = (0..n)
                    .find(|&x| self.cells[x * n + k] != VarState::Zero)
                    .expect("one live cell");
                self.set(x * n + k, VarState::One)
            }
            _ => true,
        }
    }

    /// Applies the emptiness and unit rules to one line of block `a`.
    fn check_line(&mut self, a: usize, line: Line) -> bool {
        if self.cells[a] == VarState::Zero {
            // a dead block has no live lines and forces nothing
            return true;
        }
        let n = self.n();
        let live = match line {
            Line::Vertex(y) => self.line_v[a * n + y],
            Line::Position(l) => self.line_j[a * n + l],
        };
        match live {
            0 => self.set(a, VarState::Zero),
            1 if self.cells[a] == VarState::One => {
                let np = self.geo.np;
                let (x, k) = (a / n, a % n);
                let partner = match line {
                    Line::Vertex(y) => (0..n)
                        .filter(|&ll| ll != k)
                        .map(|ll| self.geo.q_between(a, y * n + ll))
                        .find(|&q| self.cells[np + q] != VarState::Zero),
                    Line::Position(l) => (0..n)
                        .filter(|&yy| yy != x)
                        .map(|yy| self.geo.q_between(a, yy * n + l))
                        .find(|&q| self.cells[np + q] != VarState::Zero),
                };
                self.set(np + partner.expect("one live cell"), VarState::One)
            }
            _ => true,
        }
    }
}

#[derive(Clone, Copy)]
enum Line {
    Vertex(usize),
    Position(usize),
}
