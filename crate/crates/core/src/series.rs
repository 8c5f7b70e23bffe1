//! Strict growth series of languages and linear-recurrence fitting.
//!
//! A fitted recurrence is evidence that the series is rational, not a
//! proof. All arithmetic is exact.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Zero};
use thiserror::Error;

use crate::automata::Automaton;

type Q = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("order {order} needs at least {needed} coefficients, got {got}")]
    InsufficientData { order: usize, needed: usize, got: usize },
    #[error("coefficients too large for exact fitting")]
    Overflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesSource {
    Enumeration,
    Automaton,
}

/// Number of words of each length, starting at length 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCoefficients {
    pub coeffs: Vec<u128>,
    pub source: SeriesSource,
}

/// Counts accepted words of each length up to `n` via the transition
/// count matrix of the determinized automaton.
pub fn coefficients_from_automaton(a: &Automaton, n: usize) -> SeriesCoefficients {
    SeriesCoefficients { coeffs: a.count_by_length(n), source: SeriesSource::Automaton }
}

/// Histogram of word lengths up to `n`.
pub fn coefficients_from_enumeration<W: core::ops::Deref<Target = [T]>, T>(words: &[W], n: usize) -> SeriesCoefficients {
    let mut coeffs = vec![0u128; n + 1];
    for w in words {
        if let Some(c) = coeffs.get_mut(w.len()) {
            *c += 1;
        }
    }
    SeriesCoefficients { coeffs, source: SeriesSource::Enumeration }
}

/// `c[n+d] = a_1·c[n+d-1] + … + a_d·c[n]` for all `n ≥ start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub start: usize,
    pub coefficients: Vec<Q>,
}

impl Recurrence {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// Integer coefficients, when every coefficient is an integer.
    pub fn integer_coefficients(&self) -> Option<Vec<i128>> {
        self.coefficients.iter().map(|q| q.is_integer().then(|| q.to_integer())).collect()
    }

    /// True when the recurrence reproduces every coefficient of `c` from
    /// `start` on.
    pub fn fits(&self, c: &[u128]) -> bool {
        let d = self.order();
        (self.start + d..c.len()).all(|n| predict(&self.coefficients, c, n) == Some(Q::from_integer(c[n] as i128)))
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.order();
        let lhs = if d == 0 { String::from("c[n]") } else { alloc::format!("c[n+{d}]") };
        let mut terms: Vec<String> = Vec::new();
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let shift = d - 1 - i;
            let idx = if shift == 0 { String::from("c[n]") } else { alloc::format!("c[n+{shift}]") };
            terms.push(if *a == Q::from_integer(1) { idx } else { alloc::format!("{a}·{idx}") });
        }
        let rhs = if terms.is_empty() { String::from("0") } else { terms.join(" + ") };
        write!(f, "{lhs} = {rhs} for n ≥ {}", self.start)
    }
}

fn predict(a: &[Q], c: &[u128], n: usize) -> Option<Q> {
    let mut acc = Q::zero();
    for (i, ai) in a.iter().enumerate() {
        let term = ai.checked_mul(&Q::from_integer(i128::try_from(c[n - 1 - i]).ok()?))?;
        acc = acc.checked_add(&term)?;
    }
    Some(acc)
}

/// Solves the square system `m·x = rhs` exactly. `None` when singular.
fn solve(mut m: Vec<Vec<Q>>, mut rhs: Vec<Q>) -> Result<Option<Vec<Q>>, SeriesError> {
    let n = rhs.len();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(None);
        };
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].checked_div(&m[col][col]).ok_or(SeriesError::Overflow)?;
            let pivot = m[col].clone();
            for (x, p) in m[r].iter_mut().zip(&pivot).skip(col) {
                let t = f.checked_mul(p).ok_or(SeriesError::Overflow)?;
                *x = x.checked_sub(&t).ok_or(SeriesError::Overflow)?;
            }
            let t = f.checked_mul(&rhs[col]).ok_or(SeriesError::Overflow)?;
            rhs[r] = rhs[r].checked_sub(&t).ok_or(SeriesError::Overflow)?;
        }
    }
    let mut x = Vec::with_capacity(n);
    for i in 0..n {
        x.push(rhs[i].checked_div(&m[i][i]).ok_or(SeriesError::Overflow)?);
    }
    Ok(Some(x))
}

/// Largest order the data supports: fitting `d` coefficients plus two
/// verification points needs `2d + 2` values.
pub fn max_order(len: usize) -> usize {
    len.saturating_sub(2) / 2
}

/// The minimal-order recurrence (then the shortest burn-in) fitting every
/// supplied coefficient after the burn-in, checked on at least two points
/// beyond those used to fit it. With `order` set, only that order is tried.
pub fn find_recurrence(s: &SeriesCoefficients, order: Option<usize>) -> Result<Option<Recurrence>, SeriesError> {
    let c = &s.coeffs;
    let orders = match order {
        Some(d) if 2 * d + 2 > c.len() => {
            return Err(SeriesError::InsufficientData { order: d, needed: 2 * d + 2, got: c.len() })
        }
        Some(d) => d..=d,
        None if c.len() < 2 => return Err(SeriesError::InsufficientData { order: 0, needed: 2, got: c.len() }),
        None => 0..=max_order(c.len()),
    };
    let val = |n: usize| i128::try_from(c[n]).map(Q::from_integer).map_err(|_| SeriesError::Overflow);
    for d in orders {
        // Fitting uses indices start+d .. start+2d-1; two more must remain.
        for start in 0..=(c.len() - 2 * d - 2) {
            let mut m = Vec::with_capacity(d);
            let mut rhs = Vec::with_capacity(d);
            for n in start + d..start + 2 * d {
                m.push((1..=d).map(|i| val(n - i)).collect::<Result<Vec<_>, _>>()?);
                rhs.push(val(n)?);
            }
            let Some(a) = solve(m, rhs)? else { continue };
            let rec = Recurrence { start, coefficients: a };
            if rec.fits(c) {
                return Ok(Some(rec));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{geo_automaton, Symbol};
    use crate::graph::examples::*;
    use crate::twisted::{enumerate_language, LanguageKind, SearchBudget, TwistedContext};
    use crate::automorphism::examples::*;
    use alloc::sync::Arc;
    use proptest::prelude::*;

    fn series(c: &[u128]) -> SeriesCoefficients {
        SeriesCoefficients { coeffs: c.to_vec(), source: SeriesSource::Enumeration }
    }

    #[test]
    fn automaton_coefficients() {
        let f2 = free2();
        let a = geo_automaton(&f2);
        assert_eq!(coefficients_from_automaton(&a, 4).coeffs, [1, 4, 12, 36, 108]);
        let words = a.enumerate_accepted(3);
        assert_eq!(coefficients_from_enumeration(&words, 3).coeffs, [1, 4, 12, 36]);
        let empty = Automaton::empty(alloc::vec!["a".into()]);
        assert_eq!(coefficients_from_automaton(&empty, 3).coeffs, [0, 0, 0, 0]);
        let eps = Automaton::from_words(alloc::vec!["a".into()], &[Vec::new()]).unwrap();
        assert_eq!(coefficients_from_automaton(&eps, 3).coeffs, [1, 0, 0, 0]);
        assert_eq!(coefficients_from_enumeration::<Vec<Symbol>, Symbol>(&[], 2).coeffs, [0, 0, 0]);
    }

    #[test]
    fn recurrence_examples() {
        let r = find_recurrence(&series(&[1, 4, 12, 36, 108, 324]), None).unwrap().unwrap();
        assert_eq!((r.start, r.integer_coefficients()), (1, Some(alloc::vec![3])));
        assert_eq!(alloc::format!("{r}"), "c[n+1] = 3·c[n] for n ≥ 1");
        let r = find_recurrence(&series(&[1, 1, 1, 1, 1]), None).unwrap().unwrap();
        assert_eq!((r.start, r.integer_coefficients()), (0, Some(alloc::vec![1])));
        assert_eq!(
            find_recurrence(&series(&[1, 1, 2, 5]), Some(3)),
            Err(SeriesError::InsufficientData { order: 3, needed: 8, got: 4 })
        );
        let fib = find_recurrence(&series(&[1, 1, 2, 3, 5, 8, 13, 21]), None).unwrap().unwrap();
        assert_eq!(fib.integer_coefficients(), Some(alloc::vec![1, 1]));
        let zero = find_recurrence(&series(&[1, 0, 0, 0]), None).unwrap().unwrap();
        assert_eq!((zero.order(), zero.start), (0, 1));
    }

    #[test]
    fn catalan_prefix_has_no_short_recurrence() {
        let cat = [1u128, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        assert_eq!(find_recurrence(&series(&cat), None).unwrap(), None);
        assert!(find_recurrence(&series(&cat), Some(5)).is_err());
    }

    #[test]
    fn automaton_and_enumeration_agree() {
        let b = SearchBudget::default();
        let ctx = TwistedContext::new(rot()).unwrap();
        let auto = crate::automata::cycgeo_automaton(&ctx).unwrap();
        let words = enumerate_language(&ctx, LanguageKind::CycGeo, 6, &b).unwrap();
        assert_eq!(coefficients_from_automaton(&auto, 6).coeffs, coefficients_from_enumeration(&words, 6).coeffs);
        let f2 = free2();
        let geo = geo_automaton(&f2);
        assert_eq!(coefficients_from_automaton(&geo, 8).coeffs, coefficients_from_enumeration(&geo.enumerate_accepted(8), 8).coeffs);
    }

    #[test]
    fn language_chain_is_pointwise_monotone() {
        let b = SearchBudget::default();
        for ctx in [TwistedContext::new(rot()).unwrap(), TwistedContext::identity(Arc::new(square()))] {
            let mut prev: Option<Vec<u128>> = None;
            for kind in [LanguageKind::ConjSl, LanguageKind::ConjGeo, LanguageKind::CycGeo, LanguageKind::Geo] {
                let c = coefficients_from_enumeration(&enumerate_language(&ctx, kind, 4, &b).unwrap(), 4).coeffs;
                if let Some(p) = &prev {
                    assert!(p.iter().zip(&c).all(|(x, y)| x <= y), "{kind:?}");
                }
                prev = Some(c);
            }
        }
    }

    proptest! {
        #[test]
        fn reported_recurrences_reproduce_data(
            init in proptest::collection::vec(0u128..20, 1..4),
            a in proptest::collection::vec(0i128..4, 1..3),
            len in 6usize..14,
        ) {
            // Integer linear recurrence with non-negative terms.
            let mut c = init.clone();
            while c.len() < len {
                let n = c.len();
                let next: i128 = a.iter().enumerate().map(|(i, ai)| ai * c.get(n.wrapping_sub(i + 1)).map_or(0, |&x| x as i128)).sum();
                c.push(next as u128);
            }
            if let Some(r) = find_recurrence(&series(&c), None).unwrap() {
                prop_assert!(r.fits(&c));
                prop_assert!(r.order() <= max_order(c.len()));
            }
        }
    }
}
