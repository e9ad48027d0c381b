//! The u/q labelling of empty boxes and the six-variable weight of a
//! filled staircase tableau.
//!
//! Every box strictly left of a `β` in its row is labelled `u`, and every
//! box strictly left of a `δ` is labelled `q`. Each box still empty is then
//! labelled by the nearest symbol below it in its column: `u` above an `α`
//! or `δ`, `q` above a `β` or `γ`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::enumerate::{enumerate_four_capped, Powers, DEFAULT_FOUR_CAP};
use crate::rational::Rational;
use crate::tableau::{Symbol, Tableau};
use crate::{Error, Result};

/// Label of an empty box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    U,
    Q,
}

impl Label {
    pub fn letter(self) -> char {
        match self {
            Label::U => 'u',
            Label::Q => 'q',
        }
    }

    pub fn from_letter(c: char) -> Option<Label> {
        match c {
            'u' => Some(Label::U),
            'q' => Some(Label::Q),
            _ => None,
        }
    }
}

/// A tableau with every empty box labelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilledTableau {
    base: Tableau,
    labels: BTreeMap<(usize, usize), Label>,
}

impl FilledTableau {
    pub fn base(&self) -> &Tableau {
        &self.base
    }

    pub fn label(&self, row: usize, col: usize) -> Option<Label> {
        self.labels.get(&(row, col)).copied()
    }

    /// `(row, col, label)` in row-major order.
    pub fn labels(&self) -> impl Iterator<Item = (usize, usize, Label)> + '_ {
        self.labels.iter().map(|(&(r, c), &l)| (r, c, l))
    }

    /// Exponents `(n_α, n_β, n_γ, n_δ, n_u, n_q)`.
    pub fn exponents(&self) -> [usize; 6] {
        let [a, b, g, d] = self.base.counts().exponents();
        let u = self.labels.values().filter(|l| **l == Label::U).count();
        [a, b, g, d, u, self.labels.len() - u]
    }

    /// Like [`Tableau::render_text`] with `u`/`q` in place of `.`.
    pub fn render_text(&self) -> String {
        let n = self.base.size();
        let mut s = String::new();
        for row in 1..=n {
            for col in 1..=n + 1 - row {
                let c = match self.base.get(row, col) {
                    Some(sym) => sym.letter(),
                    None => self.label(row, col).map_or('.', Label::letter),
                };
                s.push(c);
            }
            s.push('\n');
        }
        s
    }
}

/// Labels every empty box of a valid tableau.
pub fn fill_uq(t: &Tableau) -> Result<FilledTableau> {
    let n = t.size();
    let mut labels = BTreeMap::new();
    for row in 1..=n {
        let width = n + 1 - row;
        let row_symbol = (1..=width).find_map(|col| match t.get(row, col) {
            Some(Symbol::Beta) => Some((col, Label::U)),
            Some(Symbol::Delta) => Some((col, Label::Q)),
            _ => None,
        });
        if let Some((stop, label)) = row_symbol {
            for col in 1..stop {
                if t.get(row, col).is_none() {
                    labels.insert((row, col), label);
                }
            }
        }
    }
    for col in 1..=n {
        let height = n + 1 - col;
        for row in 1..=height {
            if t.get(row, col).is_some() || labels.contains_key(&(row, col)) {
                continue;
            }
            let below = (row + 1..=height).find_map(|r| t.get(r, col));
            let label = match below {
                Some(Symbol::Alpha | Symbol::Delta) => Label::U,
                Some(Symbol::Beta | Symbol::Gamma) => Label::Q,
                None => {
                    return Err(Error::Structural(alloc::format!(
                        "box ({row},{col}) has no symbol to its right or below"
                    )))
                }
            };
            labels.insert((row, col), label);
        }
    }
    Ok(FilledTableau { base: t.clone(), labels })
}

/// Exponent vector `(n_α, n_β, n_γ, n_δ, n_u, n_q)` of the filled tableau.
pub fn wtx(t: &Tableau) -> Result<[usize; 6]> {
    Ok(fill_uq(t)?.exponents())
}

/// `Σ_S α^{n_α} β^{n_β} γ^{n_γ} δ^{n_δ} u^{n_u} q^{n_q}` over all four-symbol
/// tableaux of size `n`. Parameters are ordered `(α, β, γ, δ, q, u)`.
pub fn z_full(n: usize, params: [&Rational; 6]) -> Result<Rational> {
    z_full_capped(n, params, DEFAULT_FOUR_CAP)
}

pub fn z_full_capped(n: usize, [alpha, beta, gamma, delta, q, u]: [&Rational; 6], cap: usize) -> Result<Rational> {
    let mut tally: BTreeMap<[usize; 6], u64> = BTreeMap::new();
    for t in enumerate_four_capped(n, cap)? {
        *tally.entry(wtx(&t)?).or_insert(0) += 1;
    }
    let top = n * (n + 1) / 2;
    let powers: Vec<Powers> = [alpha, beta, gamma, delta, u, q].iter().map(|p| Powers::new(p, top)).collect();
    let mut z = Rational::zero();
    for (exps, count) in tally {
        let mut term = Rational::from_integer(count.into());
        for (p, e) in powers.iter().zip(exps) {
            term *= p.get(e);
        }
        z += term;
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::tableau::size_eight_example;

    #[test]
    fn size_eight_filling() {
        let filled = fill_uq(&size_eight_example()).unwrap();
        assert_eq!(filled.exponents(), [5, 2, 3, 3, 13, 10]);
        let expected = "\
uauuuqqg
ubuuaqg
uuauug
qqqqd
qdua
qqd
ub
a
";
        assert_eq!(filled.render_text(), expected);
    }

    #[test]
    fn all_alpha_diagonal_gets_u() {
        let filled = fill_uq(&Tableau::uniform_diagonal(4, Symbol::Alpha)).unwrap();
        assert!(filled.labels().all(|(_, _, l)| l == Label::U));
        assert_eq!(filled.exponents(), [4, 0, 0, 0, 6, 0]);
        let one = Tableau::uniform_diagonal(1, Symbol::Beta);
        assert_eq!(fill_uq(&one).unwrap().labels().count(), 0);
        let two = Tableau::uniform_diagonal(2, Symbol::Beta);
        assert_eq!(wtx(&two).unwrap(), [0, 2, 0, 0, 1, 0]);
    }

    #[test]
    fn partition_sums() {
        let (one, zero) = (int(1), int(0));
        assert_eq!(z_full(3, [&one, &one, &one, &one, &one, &one]).unwrap(), int(384));
        assert_eq!(z_full(2, [&int(2), &one, &zero, &zero, &one, &one]).unwrap(), int(15));
        let two = int(2);
        let scaled = z_full(3, [&two, &two, &two, &two, &two, &two]).unwrap();
        let base = z_full(3, [&one, &one, &one, &one, &one, &one]).unwrap();
        assert_eq!(scaled, base * int(64));
    }
}
