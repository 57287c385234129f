//! Wire-level analysis of a monomial: which cell ports each strand connects,
//! which cells form closed components, and strand traces through 1 -> 1 cells.

use crate::diagram::{Monomial, Slice};
use crate::word::{StrandLabel, Word};

/// An endpoint of a wire.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WireEnd {
    /// Position on the upper boundary.
    BoundaryTop(usize),
    /// Position on the lower boundary.
    BoundaryBottom(usize),
    /// Input port `port` of the cell in row `row` (ports are left to right).
    CellIn { row: usize, port: usize },
    /// Output port `port` of the cell in row `row`.
    CellOut { row: usize, port: usize },
}

#[derive(Clone, Debug)]
pub struct Wire {
    pub upper: WireEnd,
    pub lower: WireEnd,
    pub label: StrandLabel,
}

/// The wiring of a slice stack over a fixed slice sequence.
pub struct Wiring {
    pub wires: Vec<Wire>,
    /// Wire ids entering each row's generator, left to right.
    pub row_inputs: Vec<Vec<usize>>,
    /// Wire ids leaving each row's generator, left to right.
    pub row_outputs: Vec<Vec<usize>>,
    /// Wire ids occupying each horizontal level: level `r` is the boundary
    /// just above row `r`; the last level is the lower boundary.
    pub levels: Vec<Vec<usize>>,
    /// The generators of each row (owned copies so traces need no monomial).
    gens_dot: Vec<bool>,
    /// Union-find parent: wires in the same connected component of the
    /// diagram graph share a root.
    parent: Vec<usize>,
}

impl Wiring {
    pub fn of(m: &Monomial) -> Self {
        Self::of_slices(m.src(), m.slices())
    }

    pub fn of_slices(src: &Word, slices: &[Slice]) -> Self {
        let mut wires: Vec<Wire> = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        for (i, &label) in src.0.iter().enumerate() {
            wires.push(Wire { upper: WireEnd::BoundaryTop(i), lower: WireEnd::BoundaryTop(i), label });
            current.push(i);
        }
        let mut levels = vec![current.clone()];
        let mut row_inputs = Vec::with_capacity(slices.len());
        let mut row_outputs = Vec::with_capacity(slices.len());
        for (row, s) in slices.iter().enumerate() {
            let l = s.left.len();
            let n_in = s.gen.src.len();
            let ins: Vec<usize> = current[l..l + n_in].to_vec();
            for (port, &wid) in ins.iter().enumerate() {
                wires[wid].lower = WireEnd::CellIn { row, port };
            }
            let mut outs = Vec::with_capacity(s.gen.tgt.len());
            for (port, &label) in s.gen.tgt.0.iter().enumerate() {
                let wid = wires.len();
                wires.push(Wire {
                    upper: WireEnd::CellOut { row, port },
                    lower: WireEnd::CellOut { row, port },
                    label,
                });
                outs.push(wid);
            }
            current.splice(l..l + n_in, outs.iter().copied());
            levels.push(current.clone());
            row_inputs.push(ins);
            row_outputs.push(outs);
        }
        for (i, &wid) in current.iter().enumerate() {
            wires[wid].lower = WireEnd::BoundaryBottom(i);
        }
        let mut w = Wiring {
            parent: (0..wires.len()).collect(),
            wires,
            row_inputs,
            row_outputs,
            levels,
            gens_dot: slices.iter().map(|s| s.gen.is_dot()).collect(),
        };
        // Union all wires meeting at a common cell.
        for row in 0..w.row_inputs.len() {
            let mut ids: Vec<usize> = w.row_inputs[row].clone();
            ids.extend(w.row_outputs[row].iter().copied());
            for pair in ids.windows(2) {
                w.union(pair[0], pair[1]);
            }
        }
        w
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Representative wire of a wire's connected component.
    pub fn root(&mut self, wid: usize) -> usize {
        self.find(wid)
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn touches_boundary(end: WireEnd) -> bool {
        matches!(end, WireEnd::BoundaryTop(_) | WireEnd::BoundaryBottom(_))
    }

    /// A wire is in a closed component when no wire of its connected component
    /// touches the diagram boundary.
    pub fn wire_is_closed(&mut self, wid: usize) -> bool {
        let root = self.find(wid);
        for i in 0..self.wires.len() {
            if self.find(i) == root
                && (Self::touches_boundary(self.wires[i].upper)
                    || Self::touches_boundary(self.wires[i].lower))
            {
                return false;
            }
        }
        true
    }

    /// A row's cell lies on a closed component when its wires do. Rows with no
    /// wires at all (impossible for the generators used here) count as closed.
    pub fn row_is_closed(&mut self, row: usize) -> bool {
        let wid = self
            .row_inputs[row]
            .first()
            .or_else(|| self.row_outputs[row].first())
            .copied();
        match wid {
            Some(wid) => self.wire_is_closed(wid),
            None => true,
        }
    }

    /// Follow a wire upward through 1 -> 1 cells only; returns the first
    /// non-dot upper end reached.
    pub fn trace_up(&self, mut wid: usize) -> WireEnd {
        loop {
            match self.wires[wid].upper {
                WireEnd::CellOut { row, port } if self.gens_dot[row] => {
                    debug_assert_eq!(port, 0);
                    wid = self.row_inputs[row][0];
                }
                end => return end,
            }
        }
    }

    /// Follow a wire downward through 1 -> 1 cells only; returns the first
    /// non-dot lower end reached.
    pub fn trace_down(&self, mut wid: usize) -> WireEnd {
        loop {
            match self.wires[wid].lower {
                WireEnd::CellIn { row, port } if self.gens_dot[row] => {
                    debug_assert_eq!(port, 0);
                    wid = self.row_outputs[row][0];
                }
                end => return end,
            }
        }
    }

    /// Number of dot (1 -> 1) cells encountered tracing upward from a wire.
    pub fn dots_above(&self, mut wid: usize) -> usize {
        let mut n = 0;
        loop {
            match self.wires[wid].upper {
                WireEnd::CellOut { row, .. } if self.gens_dot[row] => {
                    n += 1;
                    wid = self.row_inputs[row][0];
                }
                _ => return n,
            }
        }
    }
}

/// Planar regions of a slice stack: the gaps between adjacent wires at each
/// horizontal level, merged wherever nothing separates them vertically.
/// Gap `g` at a level has exactly `g` wires to its left, so the minimum gap
/// index over a region measures how far left the region reaches; closed
/// boundaries make the two outer gaps one region (the plane wraps around an
/// empty boundary).
pub struct GapRegions {
    parent: Vec<usize>,
    /// Flat id of gap `g` at level `h` is `offsets[h] + g`.
    offsets: Vec<usize>,
    widths: Vec<usize>,
    min_gap: Vec<usize>,
}

impl GapRegions {
    pub fn of_slices(src: &Word, slices: &[Slice]) -> Self {
        let mut widths = Vec::with_capacity(slices.len() + 1);
        let mut w = src.len();
        widths.push(w);
        for s in slices {
            w = w - s.gen.src.len() + s.gen.tgt.len();
            widths.push(w);
        }
        let mut offsets = Vec::with_capacity(widths.len());
        let mut total = 0;
        for w in &widths {
            offsets.push(total);
            total += w + 1;
        }
        let mut r = GapRegions { parent: (0..total).collect(), offsets, widths, min_gap: Vec::new() };
        for (h, s) in slices.iter().enumerate() {
            let l = s.left.len();
            let n_in = s.gen.src.len();
            let n_out = s.gen.tgt.len();
            for g in 0..=r.widths[h] {
                // A gap left of the cell passes straight down; one at or right
                // of the cell's input span passes down shifted. A gap exactly
                // at a zero-width cell's column does both: the region wraps
                // over the top of the inserted cell.
                if g <= l {
                    r.union(r.offsets[h] + g, r.offsets[h + 1] + g);
                }
                if g >= l + n_in {
                    r.union(r.offsets[h] + g, r.offsets[h + 1] + g - n_in + n_out);
                }
            }
        }
        let mut min_gap = vec![usize::MAX; total];
        for h in 0..r.widths.len() {
            for g in 0..=r.widths[h] {
                let root = r.find(r.offsets[h] + g);
                min_gap[root] = min_gap[root].min(g);
            }
        }
        r.min_gap = min_gap;
        r
    }

    fn find(&self, mut i: usize) -> usize {
        while self.parent[i] != i {
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    /// How far left the region containing gap `g` at level `h` reaches:
    /// the minimal number of wires to the left over all its gaps.
    pub fn leftness(&self, h: usize, g: usize) -> usize {
        self.min_gap[self.find(self.offsets[h] + g)]
    }

    /// Whether two gaps belong to the same planar region.
    pub fn same_region(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        self.find(self.offsets[a.0] + a.1) == self.find(self.offsets[b.0] + b.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Gen2, Monomial, Slice};
    use crate::word::Word;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn bubble_is_closed_strand_is_not() {
        let c = Gen2::new("c", "", "^v");
        let db = Gen2::new("db", "^v", "");
        // strand ^ tensor a cw bubble (cup then cap on columns 1-2).
        let m = Monomial::new(
            w("^"),
            vec![Slice::new(w("^"), c, w("")), Slice::new(w("^"), db, w(""))],
        )
        .unwrap();
        let mut wiring = Wiring::of(&m);
        // wire 0 is the boundary strand; it is open.
        assert!(!wiring.wire_is_closed(0));
        // both rows belong to the bubble, a closed component.
        assert!(wiring.row_is_closed(0));
        assert!(wiring.row_is_closed(1));
    }

    #[test]
    fn trace_through_dots() {
        // A single dotted strand: the dot's output traces up to the boundary
        // and the boundary wire traces down past the dot.
        let x = Gen2::new("x", "^", "^");
        let m = Monomial::new(w("^"), vec![Slice::new(w(""), x, w(""))]).unwrap();
        let wiring = Wiring::of(&m);
        let bottom = wiring.row_outputs[0][0];
        assert_eq!(wiring.trace_up(bottom), WireEnd::BoundaryTop(0));
        assert_eq!(wiring.dots_above(bottom), 1);
        assert_eq!(wiring.trace_down(0), WireEnd::BoundaryBottom(0));
    }

    #[test]
    fn dot_below_cup_traces_to_cup_port() {
        // Cup with a dot on its right (v) output: tracing the dot's lower wire
        // upward lands on the cup's right output port.
        let c = Gen2::new("c", "", "^v");
        let xb = Gen2::new("xb", "v", "v");
        let m = Monomial::new(
            w(""),
            vec![Slice::new(w(""), c, w("")), Slice::new(w("^"), xb, w(""))],
        )
        .unwrap();
        let wiring = Wiring::of(&m);
        // Identify the dot row in canonical form.
        let dot_row = m.slices().iter().position(|s| s.gen.is_dot()).unwrap();
        let below = wiring.row_outputs[dot_row][0];
        assert_eq!(
            wiring.trace_up(below),
            WireEnd::CellOut { row: 1 - dot_row, port: 1 }
        );
    }
}
