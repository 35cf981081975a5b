//! Distinguished elements of `U(gl(n))`: column Capelli bitableaux and the
//! families assembled from them, up to quantum immanants, Schur elements and
//! the Capelli determinant, plus the bitableaux correspondence with
//! `C[M_{n,n}]`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::characters::character_swapped;
use crate::combinatorics::{
    diagonal_sequence, enumerate_compositions, enumerate_row_strict, enumerate_standard, Partition, Permutation,
    YoungTableau,
};
use crate::expansion::StdExpansion;
use crate::linalg::EchelonBasis;
use crate::polyalg::{self, expand_into_columns, MPoly};
use crate::rational::{factorial, int, sign_pow, Coeff};
use crate::ugl::{Generator, Monomial, UglElement};
use crate::{Error, Result};

/// Left and right index columns of a column Capelli bitableau `[ī|j̄]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnPair {
    lefts: Vec<usize>,
    rights: Vec<usize>,
}

impl ColumnPair {
    pub fn new(lefts: Vec<usize>, rights: Vec<usize>, n: usize) -> Result<Self> {
        if lefts.len() != rights.len() {
            return Err(Error::LengthMismatch {
                left: lefts.len(),
                right: rights.len(),
            });
        }
        for &(i, j) in lefts.iter().zip(&rights).collect::<Vec<_>>().iter() {
            Generator::new(*i, *j, n)?;
        }
        Ok(ColumnPair { lefts, rights })
    }

    pub fn lefts(&self) -> &[usize] {
        &self.lefts
    }

    pub fn rights(&self) -> &[usize] {
        &self.rights
    }

    pub fn depth(&self) -> usize {
        self.lefts.len()
    }
}

fn choose2(h: usize) -> usize {
    h * h.saturating_sub(1) / 2
}

type Rows = Vec<(usize, usize)>;
type ColumnMemo = RwLock<HashMap<(usize, Rows), UglElement>>;

fn column_memo() -> &'static ColumnMemo {
    static MEMO: OnceLock<ColumnMemo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn rows_of(lefts: &[usize], rights: &[usize], n: usize) -> Result<Rows> {
    ColumnPair::new(lefts.to_vec(), rights.to_vec(), n)?;
    Ok(lefts.iter().copied().zip(rights.iter().copied()).collect())
}

/// `[ī|j̄]` by the top-row recursion
/// `[ī|j̄] = (−1)^{h−1} e_{i1 j1} [i2..ih | j2..jh]
///        + (−1)^{h−2} Σ_{k≥2} δ_{ik, j1} [row 1 := (i1, jk), row k removed]`.
/// Results are memoized on the sorted rows.
pub fn column_capelli(lefts: &[usize], rights: &[usize], n: usize) -> Result<UglElement> {
    let mut rows = rows_of(lefts, rights, n)?;
    rows.sort_unstable();
    Ok(column_capelli_rows(rows, n))
}

fn column_capelli_rows(rows: Rows, n: usize) -> UglElement {
    let h = rows.len();
    match h {
        0 => return UglElement::one(n),
        1 => return UglElement::generator(rows[0].0, rows[0].1, n).expect("validated indices"),
        _ => {}
    }
    let key = (n, rows);
    if let Some(hit) = column_memo().read().expect("column memo poisoned").get(&key) {
        return hit.clone();
    }
    let rows = &key.1;
    let (i1, j1) = rows[0];
    let head = UglElement::generator(i1, j1, n).expect("validated indices");
    let tail = sorted_column(rows[1..].to_vec(), n);
    let mut out = (&head * &tail).scale(&int(sign_pow(h - 1)));
    for k in 1..h {
        if rows[k].0 != j1 {
            continue;
        }
        let mut contracted: Rows = Vec::with_capacity(h - 1);
        contracted.push((i1, rows[k].1));
        contracted.extend(rows.iter().enumerate().filter(|&(r, _)| r != 0 && r != k).map(|(_, &x)| x));
        out += &sorted_column(contracted, n).scale(&int(sign_pow(h - 2)));
    }
    column_memo()
        .write()
        .expect("column memo poisoned")
        .insert(key.clone(), out.clone());
    out
}

fn sorted_column(mut rows: Rows, n: usize) -> UglElement {
    rows.sort_unstable();
    column_capelli_rows(rows, n)
}

/// `[ī|j̄]` by the bottom-row recursion
/// `[ī|j̄] = (−1)^{h−1} [i1..i_{h−1} | j1..j_{h−1}] e_{ih jh}
///        + (−1)^{h−2} Σ_{k<h} δ_{ih, jk} [rows 1..h−1 with jk := jh]`.
/// Deliberately unmemoized, so it stays independent of [`column_capelli`].
pub fn column_capelli_alt(lefts: &[usize], rights: &[usize], n: usize) -> Result<UglElement> {
    let rows = rows_of(lefts, rights, n)?;
    Ok(bottom_recursion(&rows, n))
}

fn bottom_recursion(rows: &[(usize, usize)], n: usize) -> UglElement {
    let h = rows.len();
    match h {
        0 => return UglElement::one(n),
        1 => return UglElement::generator(rows[0].0, rows[0].1, n).expect("validated indices"),
        _ => {}
    }
    let (ih, jh) = rows[h - 1];
    let init = &rows[..h - 1];
    let last = UglElement::generator(ih, jh, n).expect("validated indices");
    let mut out = (&bottom_recursion(init, n) * &last).scale(&int(sign_pow(h - 1)));
    for k in 0..h - 1 {
        if rows[k].1 != ih {
            continue;
        }
        let mut contracted = init.to_vec();
        contracted[k].1 = jh;
        out += &bottom_recursion(&contracted, n).scale(&int(sign_pow(h - 2)));
    }
    out
}

fn check_entries(t: &YoungTableau, n: usize) -> Result<()> {
    t.entries().iter().try_for_each(|&e| {
        if e == 0 || e > n {
            Err(Error::IndexOutOfRange { index: e, bound: n })
        } else {
            Ok(())
        }
    })
}

/// `[S|T] = Σ sign · [column pair]` over the column expansion of `(S|T)`;
/// zero when shapes differ.
pub fn capelli_bitableau(left: &YoungTableau, right: &YoungTableau, n: usize) -> Result<UglElement> {
    check_entries(left, n)?;
    check_entries(right, n)?;
    let mut out = UglElement::zero(n);
    for term in expand_into_columns(left, right) {
        out += &column_capelli(&term.left, &term.right, n)?.scale(&int(term.sign));
    }
    Ok(out)
}

/// `[S|⎕T] = Σ_{T̄} [S|T̄]` over the column-permuted family of `T`.
pub fn young_capelli(left: &YoungTableau, right: &YoungTableau, n: usize) -> Result<UglElement> {
    let mut out = UglElement::zero(n);
    if left.shape() != right.shape() {
        return Ok(out);
    }
    for t in right.column_permuted_family() {
        out += &capelli_bitableau(left, &t, n)?;
    }
    Ok(out)
}

/// `[⎕S|T] = (−1)^{C(h,2)} Σ_σ sign(σ) [S|⎕T^σ]` over independent row
/// permutations σ of `T`.
pub fn double_young_capelli(left: &YoungTableau, right: &YoungTableau, n: usize) -> Result<UglElement> {
    let mut out = UglElement::zero(n);
    if left.shape() != right.shape() {
        return Ok(out);
    }
    for (sign, t) in right.row_permuted_family() {
        out += &young_capelli(left, &t, n)?.scale(&int(sign));
    }
    Ok(out.scale(&int(sign_pow(choose2(left.weight())))))
}

/// `Cimm_λ[ī; j̄] = Σ_σ χ^λ(σ) [ī∘σ | j̄]` with the swapped-convention character.
pub fn capelli_immanant(shape: &Partition, lefts: &[usize], rights: &[usize], n: usize) -> Result<UglElement> {
    if lefts.len() != rights.len() {
        return Err(Error::LengthMismatch {
            left: lefts.len(),
            right: rights.len(),
        });
    }
    if shape.weight() != lefts.len() {
        return Err(Error::WeightMismatch {
            left: shape.weight(),
            right: lefts.len(),
        });
    }
    let mut out = UglElement::zero(n);
    for sigma in Permutation::all(lefts.len()) {
        let chi = character_swapped(shape, &sigma)?;
        if chi != 0 {
            out += &column_capelli(&sigma.permute(lefts), rights, n)?.scale(&int(chi));
        }
    }
    Ok(out)
}

/// `(−1)^{C(h,2)} Σ_{h_1+..+h_n=h} (scale / ∏ h_p!) Cimm_{μ̃}[1^{h_1}..n^{h_n}; same]`.
fn diagonal_immanant_sum(shape: &Partition, n: usize, scale: &Coeff) -> Result<UglElement> {
    let h = shape.weight();
    let conj = shape.conjugate();
    let mut out = UglElement::zero(n);
    if h > 0 && conj.first() > n {
        return Ok(out);
    }
    for comp in enumerate_compositions(h, n) {
        let denom: BigInt = comp.iter().map(|&m| factorial(m)).product();
        let diag = diagonal_sequence(&comp);
        let cimm = capelli_immanant(&conj, &diag, &diag, n)?;
        out += &cimm.scale(&(scale / Coeff::from_integer(denom)));
    }
    Ok(out.scale(&int(sign_pow(choose2(h)))))
}

/// The quantum immanant of shape `μ` as a combination of diagonal Capelli immanants.
pub fn quantum_immanant(shape: &Partition, n: usize) -> Result<UglElement> {
    diagonal_immanant_sum(shape, n, &Coeff::from_integer(shape.hook_number().into()))
}

/// The Schur element `S_μ(n) = (dim μ / h!) · quantum_immanant(μ, n)`.
pub fn schur_element(shape: &Partition, n: usize) -> Result<UglElement> {
    diagonal_immanant_sum(shape, n, &Coeff::one())
}

/// `S_μ(n) = (1/H(μ)) Σ_S [⎕S|S]` over row-strict `S` of shape `μ̃` on `1..=n`.
pub fn schur_element_dyc(shape: &Partition, n: usize) -> Result<UglElement> {
    let mut out = UglElement::zero(n);
    for s in enumerate_row_strict(&shape.conjugate(), n) {
        out += &double_young_capelli(&s, &s, n)?;
    }
    Ok(out.scale(&Coeff::new(BigInt::one(), shape.hook_number().into())))
}

/// Column determinant `Σ_σ sign(σ) a_{σ(1),1} .. a_{σ(n),n}` of the matrix
/// `a_ij = e_ij + δ_ij (n − i)`, leftmost factor first.
pub fn capelli_determinant(n: usize) -> Result<UglElement> {
    let entry = |i: usize, j: usize| -> Result<UglElement> {
        let mut e = UglElement::generator(i, j, n)?;
        if i == j {
            e += &UglElement::scalar(n, int((n - i) as i64));
        }
        Ok(e)
    };
    let mut out = UglElement::zero(n);
    for sigma in Permutation::all(n) {
        let mut prod = UglElement::one(n);
        for col in 0..n {
            prod = prod.checked_mul(&entry(sigma.apply(col) + 1, col + 1)?)?;
        }
        out += &prod.scale(&int(sigma.sign()));
    }
    Ok(out)
}

fn require_square(p: &MPoly) -> Result<()> {
    if p.n() != p.d() {
        return Err(Error::AmbientMismatch(format!(
            "the correspondence needs C[M_{{n,n}}], got C[M_{{{},{}}}]",
            p.n(),
            p.d()
        )));
    }
    Ok(())
}

/// The linear isomorphism `C[M_{n,n}] → U(gl(n))` sending the monomial
/// `(i_1|j_1)..(i_h|j_h)` to `(−1)^{C(h,2)} [ī|j̄]`.
pub fn koszul_inverse(p: &MPoly) -> Result<UglElement> {
    require_square(p)?;
    let n = p.n();
    let mut out = UglElement::zero(n);
    for (e, c) in p.terms() {
        let (lefts, rights): (Vec<usize>, Vec<usize>) = p.word_of(e).into_iter().unzip();
        let sign = int(sign_pow(choose2(lefts.len())));
        out += &column_capelli(&lefts, &rights, n)?.scale(&(c * sign));
    }
    Ok(out)
}

/// The inverse of [`koszul_inverse`]. The image of a monomial has that
/// monomial's PBW word as its top-degree part, so top degrees are peeled off.
pub fn koszul(x: &UglElement) -> Result<MPoly> {
    let n = x.n();
    let mut residual = x.clone();
    let mut out = MPoly::zero(n, n);
    while let Some(deg) = residual.filtration_degree() {
        let mut top = MPoly::zero(n, n);
        for (m, c) in residual.homogeneous_part(deg).terms() {
            let word: Vec<(usize, usize)> = m.iter().map(|g| (g.row as usize, g.col as usize)).collect();
            top = &top + &MPoly::monomial(n, n, &word)?.scale(c);
        }
        let image = koszul_inverse(&top)?;
        residual = &residual - &image;
        debug_assert!(residual.filtration_degree().is_none_or(|d| d < deg));
        out = &out + &top;
    }
    Ok(out)
}

/// Weight of a PBW monomial under the diagonal torus: `Σ (ε_row − ε_col)`.
fn monomial_weight(m: &[Generator], n: usize) -> Vec<i64> {
    let mut w = vec![0i64; n];
    for g in m {
        w[g.row as usize - 1] += 1;
        w[g.col as usize - 1] -= 1;
    }
    w
}

fn pair_weight(left: &YoungTableau, right: &YoungTableau, n: usize) -> Vec<i64> {
    let mut w = vec![0i64; n];
    for &e in left.entries() {
        w[e - 1] += 1;
    }
    for &e in right.entries() {
        w[e - 1] -= 1;
    }
    w
}

struct WeightBlock {
    pairs: Vec<(YoungTableau, YoungTableau)>,
    echelon: EchelonBasis<Monomial>,
}

/// The standard Young-Capelli bitableaux `[S|⎕T]` of weight `≤ max_h`,
/// organized by torus weight for exact coordinate solves.
pub struct YoungCapelliBasis {
    n: usize,
    max_h: usize,
    blocks: BTreeMap<Vec<i64>, WeightBlock>,
    len: usize,
}

impl YoungCapelliBasis {
    pub fn new(n: usize, max_h: usize) -> Result<Self> {
        let mut blocks: BTreeMap<Vec<i64>, WeightBlock> = BTreeMap::new();
        let mut len = 0;
        for k in 0..=max_h {
            for shape in Partition::all(k) {
                if k > 0 && shape.first() > n {
                    continue;
                }
                let tabs = enumerate_standard(&shape, n);
                for s in &tabs {
                    for t in &tabs {
                        let yc = young_capelli(s, t, n)?;
                        let block = blocks.entry(pair_weight(s, t, n)).or_insert_with(|| WeightBlock {
                            pairs: Vec::new(),
                            echelon: EchelonBasis::new(),
                        });
                        if !block.echelon.insert(yc.terms()) {
                            return Err(Error::SolveFailed(format!(
                                "Young-Capelli bitableau [{s}|{t}] is dependent on earlier ones"
                            )));
                        }
                        block.pairs.push((s.clone(), t.clone()));
                        len += 1;
                    }
                }
            }
        }
        Ok(YoungCapelliBasis { n, max_h, blocks, len })
    }

    /// Number of basis elements; equals `dim U(gl(n))^{(max_h)}`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Coordinates of `x` over the basis.
    pub fn expand(&self, x: &UglElement) -> Result<StdExpansion> {
        if x.n() != self.n {
            return Err(Error::AmbientMismatch(format!("U(gl({})) vs U(gl({}))", x.n(), self.n)));
        }
        if x.filtration_degree().unwrap_or(0) > self.max_h {
            return Err(Error::SolveFailed(format!(
                "filtration degree {} exceeds basis bound {}",
                x.filtration_degree().unwrap_or(0),
                self.max_h
            )));
        }
        let mut by_weight: BTreeMap<Vec<i64>, BTreeMap<Monomial, Coeff>> = BTreeMap::new();
        for (m, c) in x.terms() {
            by_weight
                .entry(monomial_weight(m, self.n))
                .or_default()
                .insert(m.clone(), c.clone());
        }
        let mut out = StdExpansion::new();
        for (w, target) in by_weight {
            let block = self
                .blocks
                .get(&w)
                .ok_or_else(|| Error::SolveFailed(format!("no basis elements of weight {w:?}")))?;
            let coords = block
                .echelon
                .coordinates(&target)
                .ok_or_else(|| Error::SolveFailed(format!("weight {w:?} block not spanned")))?;
            for (idx, c) in coords {
                let (s, t) = block.pairs[idx].clone();
                out.add(s, t, c);
            }
        }
        Ok(out)
    }
}

/// Coordinates of `x` over the standard Young-Capelli bitableaux of weight up
/// to its filtration degree.
pub fn standard_capelli_expansion(x: &UglElement) -> Result<StdExpansion> {
    YoungCapelliBasis::new(x.n(), x.filtration_degree().unwrap_or(0))?.expand(x)
}

/// The same coordinates computed on the polynomial side: apply [`koszul`],
/// then read off Gordan-Capelli coordinates degree by degree.
pub fn standard_capelli_expansion_via_koszul(x: &UglElement) -> Result<StdExpansion> {
    let p = koszul(x)?;
    let mut out = StdExpansion::new();
    for deg in 0..=p.degree().unwrap_or(0) {
        let part = p.homogeneous_part(deg);
        for ((s, t), c) in polyalg::gc_coordinates(&part)?.terms() {
            out.add(s.clone(), t.clone(), c.clone());
        }
    }
    Ok(out)
}

/// Rebuilds `Σ a · [S|⎕T]` from an expansion.
pub fn reconstruct_young_capelli(exp: &StdExpansion, n: usize) -> Result<UglElement> {
    let mut out = UglElement::zero(n);
    for ((s, t), c) in exp.terms() {
        out += &young_capelli(s, t, n)?.scale(c);
    }
    Ok(out)
}
