//! The staircase tableau data model.
//!
//! Boxes are addressed by 1-indexed `(row, col)` pairs counted from the NW
//! corner; box `(i, j)` exists iff `i + j ≤ n + 1`, and the diagonal boxes are
//! `(i, n + 1 − i)`. A [`Tableau`] only guarantees that its filled boxes lie
//! inside the shape; the filling rules are checked by [`Tableau::validate`].

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::rational::{pow, Rational};
use crate::{Error, Result};

/// The four tableau symbols. `Alpha`/`Gamma` are column-type, `Beta`/`Delta`
/// row-type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl Symbol {
    pub const ALL: [Symbol; 4] = [Symbol::Alpha, Symbol::Beta, Symbol::Gamma, Symbol::Delta];

    /// `α` or `γ`: at most one per column, nothing above it.
    pub fn is_column_type(self) -> bool {
        matches!(self, Symbol::Alpha | Symbol::Gamma)
    }

    /// `β` or `δ`: at most one per row, nothing to its left.
    pub fn is_row_type(self) -> bool {
        matches!(self, Symbol::Beta | Symbol::Delta)
    }

    /// The symbol exchange used by the diagonal reflection: `α↔β`, `γ↔δ`.
    pub fn swapped(self) -> Symbol {
        match self {
            Symbol::Alpha => Symbol::Beta,
            Symbol::Beta => Symbol::Alpha,
            Symbol::Gamma => Symbol::Delta,
            Symbol::Delta => Symbol::Gamma,
        }
    }

    /// Collapses `γ` to `α` and `δ` to `β`.
    pub fn reduced(self) -> Symbol {
        match self {
            Symbol::Alpha | Symbol::Gamma => Symbol::Alpha,
            Symbol::Beta | Symbol::Delta => Symbol::Beta,
        }
    }

    /// One-letter rendering: `a`, `b`, `g`, `d`.
    pub fn letter(self) -> char {
        match self {
            Symbol::Alpha => 'a',
            Symbol::Beta => 'b',
            Symbol::Gamma => 'g',
            Symbol::Delta => 'd',
        }
    }

    pub fn from_letter(c: char) -> Option<Symbol> {
        Symbol::ALL.into_iter().find(|s| s.letter() == c)
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Alpha => "alpha",
            Symbol::Beta => "beta",
            Symbol::Gamma => "gamma",
            Symbol::Delta => "delta",
        }
    }

    pub fn from_name(s: &str) -> Option<Symbol> {
        Symbol::ALL.into_iter().find(|sym| sym.name() == s)
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The filling rules a tableau can break.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// (ii) no diagonal box is empty.
    DiagonalFilled,
    /// (iii) boxes left of a `β`/`δ` in its row are empty.
    EmptyLeftOfRowSymbol,
    /// (iv) boxes above an `α`/`γ` in its column are empty.
    EmptyAboveColumnSymbol,
}

impl Rule {
    pub fn label(self) -> &'static str {
        match self {
            Rule::DiagonalFilled => "(ii)",
            Rule::EmptyLeftOfRowSymbol => "(iii)",
            Rule::EmptyAboveColumnSymbol => "(iv)",
        }
    }
}

/// One breach of a filling rule.
///
/// `at` is the box owning the constraint (the empty diagonal box for (ii), the
/// `β`/`δ` or `α`/`γ` for (iii)/(iv)); `offending` is the filled box that
/// should have been empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Violation {
    pub rule: Rule,
    pub at: (usize, usize),
    pub offending: Option<(usize, usize)>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, c) = self.at;
        match (self.rule, self.offending) {
            (Rule::DiagonalFilled, _) | (_, None) => {
                write!(f, "rule {} broken at ({r},{c})", self.rule.label())
            }
            (_, Some((orow, ocol))) => write!(
                f,
                "rule {} broken at ({r},{c}): box ({orow},{ocol}) must be empty",
                self.rule.label()
            ),
        }
    }
}

/// Symbol tallies of a tableau.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SymbolCounts {
    pub n_alpha: usize,
    pub n_beta: usize,
    pub n_gamma: usize,
    pub n_delta: usize,
    /// `A`: number of `α` on the diagonal.
    pub diag_alpha: usize,
    /// `B`: number of `β` on the diagonal.
    pub diag_beta: usize,
    pub diag_gamma: usize,
    pub diag_delta: usize,
    /// `r`: rows whose leftmost symbol is `α`.
    pub alpha_rows: usize,
}

impl SymbolCounts {
    pub fn total(&self) -> usize {
        self.n_alpha + self.n_beta + self.n_gamma + self.n_delta
    }

    /// Exponents `(N_α, N_β, N_γ, N_δ)` of the weight monomial.
    pub fn exponents(&self) -> [usize; 4] {
        [self.n_alpha, self.n_beta, self.n_gamma, self.n_delta]
    }
}

/// A staircase tableau of size `n`, stored densely row by row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    n: usize,
    cells: Vec<Option<Symbol>>,
}

fn row_offset(n: usize, row: usize) -> usize {
    (row - 1) * (n + 1) - (row - 1) * row / 2
}

impl Tableau {
    /// The size-`n` staircase with every box empty (invalid for `n ≥ 1`).
    pub fn empty(n: usize) -> Self {
        Tableau { n, cells: alloc::vec![None; n * (n + 1) / 2] }
    }

    /// Builds a tableau from `(row, col, symbol)` triples. Only the shape is
    /// checked here; use [`Tableau::validate`] for the filling rules.
    pub fn from_cells<I>(n: usize, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Symbol)>,
    {
        let mut t = Tableau::empty(n);
        for (row, col, sym) in cells {
            if !t.contains_box(row, col) {
                return Err(Error::OutsideShape { n, row, col });
            }
            let idx = t.index(row, col);
            if t.cells[idx].is_some() {
                return Err(Error::DuplicateCell { row, col });
            }
            t.cells[idx] = Some(sym);
        }
        Ok(t)
    }

    /// The tableau with `sym` in every diagonal box and nothing else.
    pub fn uniform_diagonal(n: usize, sym: Symbol) -> Self {
        let mut t = Tableau::empty(n);
        for i in 1..=n {
            t.set(i, n + 1 - i, Some(sym));
        }
        t
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn contains_box(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && row + col <= self.n + 1
    }

    fn index(&self, row: usize, col: usize) -> usize {
        row_offset(self.n, row) + col - 1
    }

    /// Symbol in box `(row, col)`; `None` for an empty box or a box outside
    /// the shape.
    pub fn get(&self, row: usize, col: usize) -> Option<Symbol> {
        if self.contains_box(row, col) {
            self.cells[self.index(row, col)]
        } else {
            None
        }
    }

    /// Overwrites box `(row, col)`. Panics if the box is outside the shape.
    pub fn set(&mut self, row: usize, col: usize, sym: Option<Symbol>) {
        assert!(self.contains_box(row, col), "box ({row},{col}) outside size {}", self.n);
        let idx = self.index(row, col);
        self.cells[idx] = sym;
    }

    /// Filled boxes in `(row, col)` order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, Symbol)> + '_ {
        (1..=self.n).flat_map(move |row| {
            (1..=self.n + 1 - row).filter_map(move |col| self.get(row, col).map(|s| (row, col, s)))
        })
    }

    /// Symbol of the diagonal box in row `i`.
    pub fn diagonal(&self, row: usize) -> Option<Symbol> {
        self.get(row, self.n + 1 - row)
    }

    /// Diagonal symbols from the NE corner (row 1) to the SW corner (row n).
    pub fn diagonal_word(&self) -> Vec<Option<Symbol>> {
        (1..=self.n).map(|i| self.diagonal(i)).collect()
    }

    /// All breaches of rules (ii)–(iv); empty iff the tableau is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 1..=n {
            if self.diagonal(i).is_none() {
                out.push(Violation { rule: Rule::DiagonalFilled, at: (i, n + 1 - i), offending: None });
            }
        }
        for (row, col, sym) in self.cells() {
            if sym.is_row_type() {
                for c in 1..col {
                    if self.get(row, c).is_some() {
                        out.push(Violation {
                            rule: Rule::EmptyLeftOfRowSymbol,
                            at: (row, col),
                            offending: Some((row, c)),
                        });
                    }
                }
            } else {
                for r in 1..row {
                    if self.get(r, col).is_some() {
                        out.push(Violation {
                            rule: Rule::EmptyAboveColumnSymbol,
                            at: (row, col),
                            offending: Some((r, col)),
                        });
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `true` if only `α` and `β` occur.
    pub fn is_alpha_beta(&self) -> bool {
        self.cells().all(|(_, _, s)| matches!(s, Symbol::Alpha | Symbol::Beta))
    }

    pub fn counts(&self) -> SymbolCounts {
        let mut c = SymbolCounts::default();
        let mut per_symbol = [0usize; 4];
        let mut diag = [0usize; 4];
        for (row, col, sym) in self.cells() {
            per_symbol[sym.index()] += 1;
            if row + col == self.n + 1 {
                diag[sym.index()] += 1;
            }
        }
        for row in 1..=self.n {
            let leftmost = (1..=self.n + 1 - row).find_map(|col| self.get(row, col));
            if leftmost == Some(Symbol::Alpha) {
                c.alpha_rows += 1;
            }
        }
        [c.n_alpha, c.n_beta, c.n_gamma, c.n_delta] = per_symbol;
        [c.diag_alpha, c.diag_beta, c.diag_gamma, c.diag_delta] = diag;
        c
    }

    /// `α^{N_α} β^{N_β} γ^{N_γ} δ^{N_δ}`.
    pub fn weight(&self, alpha: &Rational, beta: &Rational, gamma: &Rational, delta: &Rational) -> Rational {
        let e = self.counts().exponents();
        let mut w = Rational::one();
        for (base, k) in [alpha, beta, gamma, delta].into_iter().zip(e) {
            if k > 0 {
                w *= pow(base, k);
            }
        }
        w
    }

    /// The subtableau with `(i, j)` as its top-left box, i.e. with the first
    /// `i − 1` rows and `j − 1` columns deleted. It has size `n − i − j + 2`.
    pub fn subtableau(&self, i: usize, j: usize) -> Result<Tableau> {
        if i == 0 || j == 0 || i + j > self.n + 1 {
            return Err(Error::Domain(alloc::format!(
                "subtableau corner ({i},{j}) is not a box of a size-{} tableau",
                self.n
            )));
        }
        let m = self.n + 2 - i - j;
        let mut t = Tableau::empty(m);
        for row in 1..=m {
            for col in 1..=m + 1 - row {
                t.set(row, col, self.get(row + i - 1, col + j - 1));
            }
        }
        Ok(t)
    }

    /// Reflection in the NW–SE diagonal with `α↔β` and `γ↔δ`.
    pub fn dagger(&self) -> Tableau {
        let mut t = Tableau::empty(self.n);
        for (row, col, sym) in self.cells() {
            t.set(col, row, Some(sym.swapped()));
        }
        t
    }

    /// The tableau with `γ → α` and `δ → β`.
    pub fn reduced(&self) -> Tableau {
        Tableau { n: self.n, cells: self.cells.iter().map(|c| c.map(Symbol::reduced)).collect() }
    }

    /// Text picture: row `i` has `n + 1 − i` characters, `.` for an empty box
    /// and `a`/`b`/`g`/`d` for the symbols. Every line ends with `\n`.
    pub fn render_text(&self) -> String {
        let mut s = String::with_capacity(self.cells.len() + self.n);
        for row in 1..=self.n {
            for col in 1..=self.n + 1 - row {
                s.push(self.get(row, col).map_or('.', Symbol::letter));
            }
            s.push('\n');
        }
        s
    }

    /// Inverse of [`Tableau::render_text`]; only the shape is checked.
    pub fn parse_text(text: &str) -> Result<Tableau> {
        let lines: Vec<&str> = text.lines().map(str::trim_end).filter(|l| !l.is_empty()).collect();
        let n = lines.len();
        let mut cells = Vec::new();
        for (i, line) in lines.iter().enumerate() {
            let row = i + 1;
            if line.chars().count() != n + 1 - row {
                return Err(Error::Domain(alloc::format!(
                    "row {row} has {} boxes, expected {}",
                    line.chars().count(),
                    n + 1 - row
                )));
            }
            for (j, ch) in line.chars().enumerate() {
                match (ch, Symbol::from_letter(ch)) {
                    ('.', _) => {}
                    (_, Some(sym)) => cells.push((row, j + 1, sym)),
                    (_, None) => {
                        return Err(Error::Domain(alloc::format!("unknown box character {ch:?}")))
                    }
                }
            }
        }
        Tableau::from_cells(n, cells)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

/// Checks raw `(row, col, symbol)` triples: shape errors come first, then the
/// list of rule violations.
pub fn validate_cells(n: usize, cells: &[(usize, usize, Symbol)]) -> Result<Vec<Violation>> {
    Tableau::from_cells(n, cells.iter().copied()).map(|t| t.validate())
}

/// The size-8 tableau with weight `α⁵β²δ³γ³` used as the standard worked
/// example (rows 1, 3 and 8 are indexed by `α`).
pub fn size_eight_example() -> Tableau {
    use Symbol::*;
    Tableau::from_cells(
        8,
        [
            (1, 2, Alpha),
            (1, 8, Gamma),
            (2, 2, Beta),
            (2, 5, Alpha),
            (2, 7, Gamma),
            (3, 3, Alpha),
            (3, 6, Gamma),
            (4, 5, Delta),
            (5, 2, Delta),
            (5, 4, Alpha),
            (6, 3, Delta),
            (7, 2, Beta),
            (8, 1, Alpha),
        ],
    )
    .expect("fixture lies inside the shape")
}
