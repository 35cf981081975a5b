//! The enveloping algebra `U(gl(n))` in PBW normal form.
//!
//! An element is a finite sum of monomials `e_{i1 j1} e_{i2 j2} ..` whose
//! generators are weakly increasing in the lexicographic order on `(i, j)`,
//! with nonzero exact rational coefficients. Products are brought back to
//! normal form with the relation `[e_ab, e_cd] = δ_bc e_ad - δ_da e_cb`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Coeff};
use crate::{Error, Result};

/// The elementary matrix `e_{row,col}`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub row: u8,
    pub col: u8,
}

impl Generator {
    pub fn new(row: usize, col: usize, n: usize) -> Result<Self> {
        for idx in [row, col] {
            if idx == 0 || idx > n {
                return Err(Error::IndexOutOfRange { index: idx, bound: n });
            }
        }
        Ok(Generator {
            row: row as u8,
            col: col as u8,
        })
    }

    fn raw(row: u8, col: u8) -> Self {
        Generator { row, col }
    }

    /// `[self, other]` as a list of (generator, ±1).
    fn bracket(self, other: Generator) -> Vec<(Generator, i64)> {
        let mut out = Vec::with_capacity(2);
        if self.col == other.row {
            out.push((Generator::raw(self.row, other.col), 1));
        }
        if other.col == self.row {
            out.push((Generator::raw(other.row, self.col), -1));
        }
        out
    }
}

/// A weakly increasing word of generators.
pub type Monomial = Vec<Generator>;

type IntTerms = Rc<Vec<(Monomial, BigInt)>>;

thread_local! {
    static RIGHT_MUL: RefCell<HashMap<(Monomial, Generator), IntTerms>> = RefCell::new(HashMap::new());
    static MONO_MUL: RefCell<HashMap<(Monomial, Monomial), IntTerms>> = RefCell::new(HashMap::new());
}

fn collect(acc: HashMap<Monomial, BigInt>) -> IntTerms {
    let mut v: Vec<(Monomial, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    Rc::new(v)
}

/// Normal form of `m · g` for a normal-ordered `m`.
fn mono_times_gen(m: &[Generator], g: Generator) -> IntTerms {
    match m.last() {
        None => return Rc::new(vec![(vec![g], BigInt::one())]),
        Some(&last) if last <= g => {
            let mut w = m.to_vec();
            w.push(g);
            return Rc::new(vec![(w, BigInt::one())]);
        }
        _ => {}
    }
    let key = (m.to_vec(), g);
    if let Some(hit) = RIGHT_MUL.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    // u·x·g = (u·g)·x + u·[x, g]
    let (u, x) = (&m[..m.len() - 1], m[m.len() - 1]);
    let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
    for (w, c) in mono_times_gen(u, g).iter() {
        for (w2, c2) in mono_times_gen(w, x).iter() {
            *acc.entry(w2.clone()).or_insert_with(BigInt::zero) += c * c2;
        }
    }
    for (t, s) in x.bracket(g) {
        for (w, c) in mono_times_gen(u, t).iter() {
            *acc.entry(w.clone()).or_insert_with(BigInt::zero) += c * s;
        }
    }
    let out = collect(acc);
    RIGHT_MUL.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

/// Normal form of `a · b` for normal-ordered `a`, `b`.
fn mono_mul(a: &[Generator], b: &[Generator]) -> IntTerms {
    if b.is_empty() {
        return Rc::new(vec![(a.to_vec(), BigInt::one())]);
    }
    if a.last().is_none_or(|&l| l <= b[0]) {
        let mut w = a.to_vec();
        w.extend_from_slice(b);
        return Rc::new(vec![(w, BigInt::one())]);
    }
    let key = (a.to_vec(), b.to_vec());
    if let Some(hit) = MONO_MUL.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let mut cur: HashMap<Monomial, BigInt> = HashMap::new();
    cur.insert(a.to_vec(), BigInt::one());
    for &g in b {
        let mut next: HashMap<Monomial, BigInt> = HashMap::new();
        for (w, c) in cur {
            for (w2, c2) in mono_times_gen(&w, g).iter() {
                *next.entry(w2.clone()).or_insert_with(BigInt::zero) += &c * c2;
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    let out = collect(cur);
    MONO_MUL.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

/// An element of `U(gl(n))` in PBW normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UglElement {
    n: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl UglElement {
    pub fn zero(n: usize) -> Self {
        UglElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, Coeff::one())
    }

    pub fn scalar(n: usize, c: Coeff) -> Self {
        let mut e = Self::zero(n);
        e.add_term(Vec::new(), c);
        e
    }

    /// `e_{ij}`.
    pub fn generator(i: usize, j: usize, n: usize) -> Result<Self> {
        let g = Generator::new(i, j, n)?;
        let mut e = Self::zero(n);
        e.add_term(vec![g], Coeff::one());
        Ok(e)
    }

    /// The product `e_{i1 j1} e_{i2 j2} ..` of an arbitrary (unsorted) word.
    pub fn from_word(n: usize, word: &[(usize, usize)]) -> Result<Self> {
        let mut acc = Self::one(n);
        for &(i, j) in word {
            acc = acc.checked_mul(&Self::generator(i, j, n)?)?;
        }
        Ok(acc)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Coeff> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[Generator]) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Adds `c · m`; `m` must already be normal-ordered.
    pub(crate) fn add_term(&mut self, m: Monomial, c: Coeff) {
        debug_assert!(m.windows(2).all(|w| w[0] <= w[1]));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        UglElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(format!(
                "U(gl({})) vs U(gl({}))",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let ab = ca * cb;
                for (w, c) in mono_mul(a, b).iter() {
                    *acc.entry(w.clone()).or_insert_with(Coeff::zero) +=
                        &ab * Coeff::from_integer(c.clone());
                }
            }
        }
        Ok(UglElement {
            n: self.n,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// `x ↦ e_{ij} x - x e_{ij}`.
    pub fn ad(&self, i: usize, j: usize) -> Result<Self> {
        let g = Self::generator(i, j, self.n)?;
        Ok(&g.checked_mul(self)? - &self.checked_mul(&g)?)
    }

    /// Whether `ad(e_ij)` kills `self` for all `n²` generators.
    pub fn is_central(&self) -> bool {
        self.first_noncommuting_generator().is_none()
    }

    /// The first `(i, j)` with `[e_ij, self] ≠ 0`, if any.
    pub fn first_noncommuting_generator(&self) -> Option<(usize, usize)> {
        for i in 1..=self.n {
            for j in 1..=self.n {
                if !self.ad(i, j).expect("indices in range").is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Longest monomial; `None` for the zero element.
    pub fn filtration_degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    /// Terms of exactly degree `k`.
    pub fn homogeneous_part(&self, k: usize) -> Self {
        UglElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.len() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms in rendering order: degree descending, then lexicographic.
    pub fn ordered_terms(&self) -> Vec<(&Monomial, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(b.0)));
        v
    }

    pub fn to_text(&self) -> String {
        let terms = self
            .ordered_terms()
            .into_iter()
            .map(|(m, c)| {
                let (neg, abs) = rational::split_sign(c);
                let body = if m.is_empty() {
                    rational::to_short(&abs)
                } else {
                    format!("{}{}", rational::prefix_for_monomial(&abs), render_monomial(m))
                };
                (neg, body)
            })
            .collect();
        rational::join_terms(terms)
    }

    pub fn to_json_value(&self) -> UglJson {
        UglJson {
            n: self.n,
            terms: self
                .ordered_terms()
                .into_iter()
                .map(|(m, c)| UglJsonTerm {
                    coeff: rational::to_pq(c),
                    monomial: m.iter().map(|g| [g.row as usize, g.col as usize]).collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("element serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: UglJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("element JSON: {e}")))?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &UglJson) -> Result<Self> {
        let mut out = Self::zero(v.n);
        for t in &v.terms {
            let word: Vec<(usize, usize)> = t.monomial.iter().map(|p| (p[0], p[1])).collect();
            let prod = Self::from_word(v.n, &word)?;
            out = out.checked_add(&prod.scale(&rational::parse(&t.coeff)?))?;
        }
        Ok(out)
    }

    /// Parses the text form, e.g. `e[1,1]^2e[2,2] - 3/2·e[1,2] + 2`.
    /// Factors need not be normal-ordered; the product is normalized.
    pub fn parse_text(s: &str, n: usize) -> Result<Self> {
        let mut out = Self::zero(n);
        for (negative, term) in rational::split_signed_terms(s)? {
            let mut t = parse_term(&term, n)?;
            if negative {
                t = -&t;
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }
}

fn render_monomial(m: &[Generator]) -> String {
    let mut out = String::new();
    let mut idx = 0;
    while idx < m.len() {
        let g = m[idx];
        let run = m[idx..].iter().take_while(|&&x| x == g).count();
        out.push_str(&format!("e[{},{}]", g.row, g.col));
        if run > 1 {
            out.push_str(&format!("^{run}"));
        }
        idx += run;
    }
    out
}

fn parse_term(term: &str, n: usize) -> Result<UglElement> {
    let bad = || Error::Parse(format!("bad term {term:?}"));
    let (coeff_str, rest) = match term.find('e') {
        Some(pos) => (&term[..pos], &term[pos..]),
        None => (term, ""),
    };
    let coeff_str = coeff_str.trim().trim_end_matches(['·', '*']).trim();
    let coeff = if coeff_str.is_empty() {
        Coeff::one()
    } else {
        rational::parse(coeff_str)?
    };
    let mut word = Vec::new();
    let mut rest = rest.trim();
    while !rest.is_empty() {
        rest = rest.strip_prefix("e[").ok_or_else(bad)?;
        let close = rest.find(']').ok_or_else(bad)?;
        let (i, j) = rest[..close].split_once(',').ok_or_else(bad)?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        let j: usize = j.trim().parse().map_err(|_| bad())?;
        rest = rest[close + 1..].trim_start();
        let mut power = 1usize;
        if let Some(r) = rest.strip_prefix('^') {
            let digits: String = r.chars().take_while(char::is_ascii_digit).collect();
            power = digits.parse().map_err(|_| bad())?;
            rest = r[digits.len()..].trim_start();
        }
        rest = rest.trim_start_matches(['·', '*']).trim_start();
        word.extend(std::iter::repeat_n((i, j), power));
    }
    Ok(UglElement::from_word(n, &word)?.scale(&coeff))
}

/// JSON mirror of an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UglJson {
    pub n: usize,
    pub terms: Vec<UglJsonTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UglJsonTerm {
    pub coeff: String,
    pub monomial: Vec<[usize; 2]>,
}

impl fmt::Display for UglElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &UglElement {
    type Output = UglElement;
    fn add(self, rhs: &UglElement) -> UglElement {
        self.checked_add(rhs).expect("ambient mismatch in add")
    }
}

impl AddAssign<&UglElement> for UglElement {
    fn add_assign(&mut self, rhs: &UglElement) {
        assert_eq!(self.n, rhs.n, "ambient mismatch in add");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Sub for &UglElement {
    type Output = UglElement;
    fn sub(self, rhs: &UglElement) -> UglElement {
        self + &(-rhs)
    }
}

impl Neg for &UglElement {
    type Output = UglElement;
    fn neg(self) -> UglElement {
        UglElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &UglElement {
    type Output = UglElement;
    fn mul(self, rhs: &UglElement) -> UglElement {
        self.checked_mul(rhs).expect("ambient mismatch in mul")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn e(i: usize, j: usize, n: usize) -> UglElement {
        UglElement::generator(i, j, n).unwrap()
    }

    #[test]
    fn generators_and_range() {
        assert_eq!(e(1, 2, 2).to_text(), "e[1,2]");
        assert_eq!(e(2, 2, 2).filtration_degree(), Some(1));
        assert!(UglElement::generator(3, 1, 2).is_err());
        assert!(UglElement::generator(0, 1, 2).is_err());
    }

    #[test]
    fn sorted_products_need_no_rewriting() {
        let p = &e(1, 2, 2) * &e(2, 1, 2);
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.to_text(), "e[1,2]e[2,1]");
    }

    #[test]
    fn one_swap() {
        let p = &e(2, 1, 2) * &e(1, 2, 2);
        let expected = &(&(&e(1, 2, 2) * &e(2, 1, 2)) - &e(1, 1, 2)) + &e(2, 2, 2);
        assert_eq!(p, expected);
        assert_eq!(p.to_text(), "e[1,2]e[2,1] - e[1,1] + e[2,2]");
    }

    #[test]
    fn adjoint_action() {
        let x = e(2, 1, 2);
        assert_eq!(x.ad(1, 2).unwrap(), &e(1, 1, 2) - &e(2, 2, 2));
        assert!(e(1, 1, 2).ad(1, 1).unwrap().is_zero());
        assert!(UglElement::one(2).ad(1, 2).unwrap().is_zero());
    }

    #[test]
    fn centrality() {
        assert!(UglElement::one(3).is_central());
        let trace = &(&e(1, 1, 3) + &e(2, 2, 3)) + &e(3, 3, 3);
        assert!(trace.is_central());
        assert!(!e(1, 2, 2).is_central());
        assert!(!e(1, 2, 2).ad(2, 1).unwrap().is_zero());
    }

    #[test]
    fn filtration() {
        assert_eq!(UglElement::zero(2).filtration_degree(), None);
        assert_eq!(UglElement::scalar(2, int(3)).filtration_degree(), Some(0));
        assert_eq!((&e(1, 1, 2) * &e(2, 2, 2)).filtration_degree(), Some(2));
    }

    #[test]
    fn bracket_fidelity_all_pairs() {
        for n in 1..=3 {
            for (a, b, c, d) in (1..=n).flat_map(|a| {
                (1..=n).flat_map(move |b| (1..=n).flat_map(move |c| (1..=n).map(move |d| (a, b, c, d))))
            }) {
                let lhs = &(&e(a, b, n) * &e(c, d, n)) - &(&e(c, d, n) * &e(a, b, n));
                let mut rhs = UglElement::zero(n);
                if b == c {
                    rhs = &rhs + &e(a, d, n);
                }
                if d == a {
                    rhs = &rhs - &e(c, b, n);
                }
                assert_eq!(lhs, rhs, "[e{a}{b}, e{c}{d}]");
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let x = &(&(&e(2, 1, 2) * &e(1, 2, 2)) * &e(1, 1, 2)).scale(&crate::rational::frac(-3, 2))
            + &UglElement::scalar(2, int(5));
        let s = x.to_text();
        assert_eq!(UglElement::parse_text(&s, 2).unwrap(), x);
        assert_eq!(UglElement::from_json(&x.to_json()).unwrap(), x);
        assert_eq!(UglElement::parse_text("0", 2).unwrap(), UglElement::zero(2));
        assert!(UglElement::parse_text("e[1,3]", 2).is_err());
        assert!(UglElement::parse_text("e[1,", 2).is_err());
    }

    #[test]
    fn powers_render_compactly() {
        let x = &(&e(1, 1, 2) * &e(1, 1, 2)) * &e(2, 2, 2);
        assert_eq!(x.to_text(), "e[1,1]^2e[2,2]");
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        assert!(e(1, 1, 2).checked_mul(&e(1, 1, 3)).is_err());
        assert!(e(1, 1, 2).checked_add(&e(1, 1, 3)).is_err());
    }
}
