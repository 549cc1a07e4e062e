//! The Z₂-graded noncommutative expression algebra holding elements of
//! `U_q[osp(2m+1|2n)^(1)]` in triangular normal form.
//!
//! Every element is a finite linear combination of *triangular words*
//! `F-word · K-monomial · E-word` with [`Scalar`] coefficients.  Products
//! are rewritten back into this form using only the Cartan-type
//! commutation `K_λ χ_μ K_λ⁻¹ = q^{(λ,μ)} χ_μ` and the cross relation
//! `[χ_i^+, χ_j^-] = δ_ij (K_i − K_i⁻¹)/(q_i − q_i⁻¹)`; no Serre-type
//! reduction is ever applied inside pure E- or F-words (canonical zero
//! testing is the job of the `derivations` module).

use crate::rootsys::{RootDatum, Weight};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FreeAlgError {
    #[error("operand is not parity-homogeneous")]
    NotParityHomogeneous,
    #[error("operand is not weight-homogeneous")]
    NotWeightHomogeneous,
    #[error("malformed element text near {0:?}")]
    Parse(String),
    #[error(transparent)]
    Scalar(#[from] crate::scalar::ParseScalarError),
}

/// A monomial in the `K_λ` group, stored as *twice* the exponent vector
/// over `α_0..α_N` so that the central square roots `K_δ^(±1/2)` are
/// representable exactly.  Invariant: the vector is congruent mod 2 to
/// `0` or to the δ-coordinate vector `(1, 2, …, 2)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct KMonomial {
    pub twice: Vec<i64>,
}

impl KMonomial {
    pub fn one(rank: usize) -> KMonomial {
        KMonomial {
            twice: vec![0; rank + 1],
        }
    }

    /// `K_λ` for an integral lattice element `λ`.
    pub fn from_weight(w: &Weight) -> KMonomial {
        KMonomial {
            twice: w.coords.iter().map(|&c| 2 * c).collect(),
        }
    }

    /// `K_δ^(s/2)` for `s = ±1`.
    pub fn half_delta(s: i64, rank: usize) -> KMonomial {
        let d = Weight::delta(rank);
        KMonomial {
            twice: d.coords.iter().map(|&c| s * c).collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.twice.iter().all(|&c| c == 0)
    }

    pub fn mul(&self, other: &KMonomial) -> KMonomial {
        KMonomial {
            twice: self
                .twice
                .iter()
                .zip(&other.twice)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn inverse(&self) -> KMonomial {
        KMonomial {
            twice: self.twice.iter().map(|&c| -c).collect(),
        }
    }

    /// The `v`-exponent of `q^{(λ, μ)}` where `λ` is this monomial's
    /// exponent and `μ` an integral lattice element: since `q = v²`,
    /// `q^{(λ,μ)} = v^{(2λ, μ)}`.
    pub fn pairing_vexp(&self, mu: &Weight, datum: &RootDatum) -> i64 {
        let twice_weight = Weight {
            coords: self.twice.clone(),
        };
        datum.bilinear(&twice_weight, mu)
    }
}

/// A triangular word: a sequence of F-letters, one K-monomial, and a
/// sequence of E-letters.  Letters are node indices `0..=N`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Word {
    pub fpart: Vec<u8>,
    pub kpart: KMonomial,
    pub epart: Vec<u8>,
}

impl Word {
    pub fn unit(rank: usize) -> Word {
        Word {
            fpart: Vec::new(),
            kpart: KMonomial::one(rank),
            epart: Vec::new(),
        }
    }

    pub fn parity(&self, datum: &RootDatum) -> u8 {
        let s: u32 = self
            .fpart
            .iter()
            .chain(&self.epart)
            .map(|&i| datum.simple_parity[i as usize] as u32)
            .sum();
        (s % 2) as u8
    }

    /// Weight: `+α_i` per E-letter, `−α_j` per F-letter (K contributes 0).
    pub fn weight(&self, datum: &RootDatum) -> Weight {
        let mut w = Weight::zero(datum.rank);
        for &i in &self.epart {
            w.coords[i as usize] += 1;
        }
        for &j in &self.fpart {
            w.coords[j as usize] -= 1;
        }
        w
    }
}

/// A finite linear combination of triangular words; the canonical form
/// stores no zero coefficients and orders words by
/// `(fpart, kpart, epart)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    pub terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero() -> Element {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Element {
        Element::from_word(Word::unit(rank), Scalar::one())
    }

    pub fn from_word(w: Word, c: Scalar) -> Element {
        let mut e = Element::zero();
        e.add_term(w, c);
        e
    }

    /// The generator `χ_i^+`.
    pub fn gen_e(i: usize, rank: usize) -> Element {
        let mut w = Word::unit(rank);
        w.epart.push(i as u8);
        Element::from_word(w, Scalar::one())
    }

    /// The generator `χ_i^-`.
    pub fn gen_f(i: usize, rank: usize) -> Element {
        let mut w = Word::unit(rank);
        w.fpart.push(i as u8);
        Element::from_word(w, Scalar::one())
    }

    /// `K_λ` for an integral lattice element.
    pub fn gen_k(lambda: &Weight) -> Element {
        let w = Word {
            fpart: Vec::new(),
            kpart: KMonomial::from_weight(lambda),
            epart: Vec::new(),
        };
        Element::from_word(w, Scalar::one())
    }

    /// The generator `K_i^{±1}`.
    pub fn gen_ki(i: usize, exp: i64, rank: usize) -> Element {
        Element::gen_k(&Weight::simple(i, rank).scale(exp))
    }

    /// `K_δ^(±1/2)`.
    pub fn gen_k_half_delta(s: i64, rank: usize) -> Element {
        let w = Word {
            fpart: Vec::new(),
            kpart: KMonomial::half_delta(s, rank),
            epart: Vec::new(),
        };
        Element::from_word(w, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * s))
                .collect(),
        }
    }

    /// Parity if parity-homogeneous.
    pub fn parity(&self, datum: &RootDatum) -> Option<u8> {
        let mut it = self.terms.keys();
        let first = it.next()?.parity(datum);
        for w in it {
            if w.parity(datum) != first {
                return None;
            }
        }
        Some(first)
    }

    /// Weight if weight-homogeneous; the zero element has every weight
    /// and reports `None` only for mixed nonzero combinations.
    pub fn weight(&self, datum: &RootDatum) -> Option<Weight> {
        let mut it = self.terms.keys();
        let first = it.next()?.weight(datum);
        for w in it {
            if w.weight(datum) != first {
                return None;
            }
        }
        Some(first)
    }

    /// Multiply by a single F-letter on the right, restoring triangular
    /// form.
    fn mul_f(&self, j: u8, datum: &RootDatum) -> Element {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            let pushed = e_word_times_f(&w.epart, j, datum);
            for (w2, c2) in &pushed.terms {
                // w2 = (f2, k2, e2) with f2 ∈ {[], [j]}; slide f2 left
                // past w.kpart, which costs q^{-(λ, α_j)} per F-letter.
                let mut coeff = c * c2;
                let mut fpart = w.fpart.clone();
                for &fj in &w2.fpart {
                    let alpha = Weight::simple(fj as usize, datum.rank);
                    coeff = &coeff * &Scalar::v_pow(-w.kpart.pairing_vexp(&alpha, datum));
                    fpart.push(fj);
                }
                let word = Word {
                    fpart,
                    kpart: w.kpart.mul(&w2.kpart),
                    epart: w2.epart.clone(),
                };
                out.add_term(word, coeff);
            }
        }
        out
    }

    /// Multiply by `K_μ` on the right: the K-letter slides left past the
    /// E-word at the cost of `q^{-(μ, wt(epart))}`.
    fn mul_k(&self, mu: &KMonomial, datum: &RootDatum) -> Element {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            let wt = {
                let mut wt = Weight::zero(datum.rank);
                for &i in &w.epart {
                    wt.coords[i as usize] += 1;
                }
                wt
            };
            let coeff = c * &Scalar::v_pow(-mu.pairing_vexp(&wt, datum));
            let word = Word {
                fpart: w.fpart.clone(),
                kpart: w.kpart.mul(mu),
                epart: w.epart.clone(),
            };
            out.add_term(word, coeff);
        }
        out
    }

    /// Multiply by a single E-letter on the right (already in place).
    fn mul_e(&self, i: u8) -> Element {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            let mut word = w.clone();
            word.epart.push(i);
            out.add_term(word, c.clone());
        }
        out
    }

    /// Product in triangular normal form.
    pub fn mul(&self, other: &Element, datum: &RootDatum) -> Element {
        let mut out = Element::zero();
        for (w2, c2) in &other.terms {
            let mut acc = self.scale(c2);
            for &j in &w2.fpart {
                acc = acc.mul_f(j, datum);
            }
            if !w2.kpart.is_one() {
                acc = acc.mul_k(&w2.kpart, datum);
            }
            for &i in &w2.epart {
                acc = acc.mul_e(i);
            }
            out = out.add(&acc);
        }
        out
    }

    /// The twisted super-bracket `[X, Y]_μ = XY − (−1)^{[X][Y]} μ YX`.
    pub fn bracket(
        &self,
        other: &Element,
        mu: &Scalar,
        datum: &RootDatum,
    ) -> Result<Element, FreeAlgError> {
        let (px, py) = match (self.parity(datum), other.parity(datum)) {
            (Some(a), Some(b)) => (a, b),
            _ if self.is_zero() || other.is_zero() => (0, 0),
            _ => return Err(FreeAlgError::NotParityHomogeneous),
        };
        let mut tail = other.mul(self, datum).scale(mu);
        if px == 1 && py == 1 {
            tail = tail.neg();
        }
        Ok(self.mul(other, datum).sub(&tail))
    }

    /// The super-commutator `[X, Y] = [X, Y]_1`.
    pub fn commutator(&self, other: &Element, datum: &RootDatum) -> Result<Element, FreeAlgError> {
        self.bracket(other, &Scalar::one(), datum)
    }

    /// The weight-twisted bracket `[[X, Y]] = [X, Y]_{q^{-(wt X, wt Y)}}`.
    pub fn qbracket(&self, other: &Element, datum: &RootDatum) -> Result<Element, FreeAlgError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Element::zero());
        }
        let wx = self.weight(datum).ok_or(FreeAlgError::NotWeightHomogeneous)?;
        let wy = other
            .weight(datum)
            .ok_or(FreeAlgError::NotWeightHomogeneous)?;
        let mu = Scalar::v_pow(-2 * datum.bilinear(&wx, &wy));
        self.bracket(other, &mu, datum)
    }

    /// The anti-automorphism Ω: `χ_i^+ ↦ d_{i+1} χ_i^-`,
    /// `χ_i^- ↦ d_{i+1} χ_i^+`, `K_λ ↦ K_λ^{-1}` (including the central
    /// half powers), coefficients conjugated by `v ↦ v^{-1}`, extended
    /// anti-multiplicatively.  On a triangular word the image is again
    /// triangular, so no rewriting is required.
    pub fn omega(&self, datum: &RootDatum) -> Element {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            let mut coeff = c.bar();
            let mut fpart: Vec<u8> = w.epart.clone();
            fpart.reverse();
            let mut epart: Vec<u8> = w.fpart.clone();
            epart.reverse();
            for &i in w.epart.iter().chain(&w.fpart) {
                if datum.d[i as usize + 1] < 0 {
                    coeff = -&coeff;
                }
            }
            let word = Word {
                fpart,
                kpart: w.kpart.inverse(),
                epart,
            };
            out.add_term(word, coeff);
        }
        out
    }

    /// Pretty serialization; see [`Element::parse`] for the grammar.
    pub fn dump(&self) -> String {
        if self.terms.is_empty() {
            return "(sum)".to_string();
        }
        let mut out = String::from("(sum");
        for (w, c) in &self.terms {
            out.push_str(" (term ");
            // scalar text uses braces so its parentheses do not collide
            // with the list delimiters
            out.push_str(&c.to_string().replace('(', "{").replace(')', "}"));
            for &j in &w.fpart {
                out.push_str(&format!(" (F {j})"));
            }
            if !w.kpart.is_one() {
                out.push_str(" (K");
                for &t in &w.kpart.twice {
                    if t % 2 == 0 {
                        out.push_str(&format!(" {}", t / 2));
                    } else {
                        out.push_str(&format!(" {t}/2"));
                    }
                }
                out.push(')');
            }
            for &i in &w.epart {
                out.push_str(&format!(" (E {i})"));
            }
            out.push(')');
        }
        out.push(')');
        out
    }

    /// Parse the `dump` format: `(sum (term <scalar> letter*)*)` with
    /// letters `(F j)`, `(E i)`, `(K h_0 … h_N)` where the `h`s are
    /// integers or halves like `-3/2`.
    pub fn parse(text: &str, rank: usize) -> Result<Element, FreeAlgError> {
        let toks = lex(text);
        let mut pos = 0usize;
        let e = parse_sum(&toks, &mut pos, rank)?;
        if pos != toks.len() {
            return Err(FreeAlgError::Parse(format!(
                "trailing tokens: {:?}",
                &toks[pos..]
            )));
        }
        Ok(e)
    }
}

/// Normal form of `(E-word) · χ_j^-`: each E-letter either hops over the
/// F-letter with the super sign, or (when the indices match) contracts to
/// `(K_i − K_i⁻¹)/(q_i − q_i⁻¹)`.
fn e_word_times_f(epart: &[u8], j: u8, datum: &RootDatum) -> Element {
    if epart.is_empty() {
        let mut w = Word::unit(datum.rank);
        w.fpart.push(j);
        return Element::from_word(w, Scalar::one());
    }
    let (head, last) = epart.split_at(epart.len() - 1);
    let i = last[0];
    let pi = datum.simple_parity[i as usize];
    let pj = datum.simple_parity[j as usize];

    // head · (E_i F_j) = sign · (head F_j) E_i + δ_ij head · C_i
    let mut out = e_word_times_f(head, j, datum).mul_e(i);
    if pi == 1 && pj == 1 {
        out = out.neg();
    }
    if i == j {
        let t = datum.qi_vexp[i as usize];
        let denom = &Scalar::v_pow(t) - &Scalar::v_pow(-t);
        let alpha = Weight::simple(i as usize, datum.rank);
        let head_el = Element::from_word(
            Word {
                fpart: Vec::new(),
                kpart: KMonomial::one(datum.rank),
                epart: head.to_vec(),
            },
            Scalar::one(),
        );
        let kplus = head_el.mul_k(&KMonomial::from_weight(&alpha), datum);
        let kminus = head_el.mul_k(&KMonomial::from_weight(&alpha.neg()), datum);
        out = out.add(&kplus.sub(&kminus).scale(&(&Scalar::one() / &denom)));
    }
    out
}

/// A finite linear combination of pure tensors of triangular words, with
/// the super sign rule `(a ⊗ b)(c ⊗ d) = (−1)^{[b][c]} ac ⊗ bd`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorElement {
    pub terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorElement {
    pub fn zero() -> TensorElement {
        TensorElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, w: (Word, Word), c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn from_pair(a: &Element, b: &Element) -> TensorElement {
        let mut out = TensorElement::zero();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                out.add_term((wa.clone(), wb.clone()), ca * cb);
            }
        }
        out
    }

    pub fn mul(&self, other: &TensorElement, datum: &RootDatum) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a, b), c1) in &self.terms {
            for ((cw, dw), c2) in &other.terms {
                let sign = if b.parity(datum) == 1 && cw.parity(datum) == 1 {
                    -Scalar::one()
                } else {
                    Scalar::one()
                };
                let left = Element::from_word(a.clone(), Scalar::one())
                    .mul(&Element::from_word(cw.clone(), Scalar::one()), datum);
                let right = Element::from_word(b.clone(), Scalar::one())
                    .mul(&Element::from_word(dw.clone(), Scalar::one()), datum);
                for (wl, cl) in &left.terms {
                    for (wr, cr) in &right.terms {
                        out.add_term(
                            (wl.clone(), wr.clone()),
                            &(&(c1 * c2) * &sign) * &(cl * cr),
                        );
                    }
                }
            }
        }
        out
    }
}

/// The Chevalley generators, used by the generator-level Hopf maps.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Generator {
    EPlus(usize),
    FMinus(usize),
    K(usize, i64),
}

/// Comultiplication on a generator:
/// `Δ(χ_i^+) = χ_i^+ ⊗ 1 + K_i ⊗ χ_i^+`,
/// `Δ(χ_i^-) = χ_i^- ⊗ K_i^{-1} + 1 ⊗ χ_i^-`, `Δ(K_i^e) = K_i^e ⊗ K_i^e`.
pub fn coproduct(g: Generator, datum: &RootDatum) -> TensorElement {
    let rank = datum.rank;
    match g {
        Generator::EPlus(i) => {
            let a = TensorElement::from_pair(&Element::gen_e(i, rank), &Element::one(rank));
            let b = TensorElement::from_pair(&Element::gen_ki(i, 1, rank), &Element::gen_e(i, rank));
            a.add(&b)
        }
        Generator::FMinus(i) => {
            let a = TensorElement::from_pair(&Element::gen_f(i, rank), &Element::gen_ki(i, -1, rank));
            let b = TensorElement::from_pair(&Element::one(rank), &Element::gen_f(i, rank));
            a.add(&b)
        }
        Generator::K(i, e) => {
            TensorElement::from_pair(&Element::gen_ki(i, e, rank), &Element::gen_ki(i, e, rank))
        }
    }
}

/// Counit: zero on `χ_i^±`, one on `K_i^{±1}`.
pub fn counit(g: Generator) -> Scalar {
    match g {
        Generator::EPlus(_) | Generator::FMinus(_) => Scalar::zero(),
        Generator::K(..) => Scalar::one(),
    }
}

/// Antipode on a generator, with the signs required by the antipode
/// axiom `m ∘ (S ⊗ id) ∘ Δ = η ∘ ε`:
/// `S(χ_i^+) = −K_i^{-1} χ_i^+`, `S(χ_i^-) = −χ_i^- K_i`,
/// `S(K_i^e) = K_i^{-e}`.
pub fn antipode(g: Generator, datum: &RootDatum) -> Element {
    let rank = datum.rank;
    match g {
        Generator::EPlus(i) => Element::gen_ki(i, -1, rank)
            .mul(&Element::gen_e(i, rank), datum)
            .neg(),
        Generator::FMinus(i) => Element::gen_f(i, rank)
            .mul(&Element::gen_ki(i, 1, rank), datum)
            .neg(),
        Generator::K(i, e) => Element::gen_ki(i, -e, rank),
    }
}

/// The generator as an element.
pub fn realize(g: Generator, rank: usize) -> Element {
    match g {
        Generator::EPlus(i) => Element::gen_e(i, rank),
        Generator::FMinus(i) => Element::gen_f(i, rank),
        Generator::K(i, e) => Element::gen_ki(i, e, rank),
    }
}

// ---------------------------------------------------------------------------
// Serialization lexer/parser
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

fn lex(text: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(Tok::Atom(std::mem::take(&mut cur)));
                }
                out.push(if ch == '(' { Tok::Open } else { Tok::Close });
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(Tok::Atom(std::mem::take(&mut cur)));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(Tok::Atom(cur));
    }
    out
}

fn expect(toks: &[Tok], pos: &mut usize, t: &Tok) -> Result<(), FreeAlgError> {
    if toks.get(*pos) == Some(t) {
        *pos += 1;
        Ok(())
    } else {
        Err(FreeAlgError::Parse(format!(
            "expected {t:?} at token {}",
            *pos
        )))
    }
}

fn atom(toks: &[Tok], pos: &mut usize) -> Result<String, FreeAlgError> {
    match toks.get(*pos) {
        Some(Tok::Atom(s)) => {
            *pos += 1;
            Ok(s.clone())
        }
        other => Err(FreeAlgError::Parse(format!("expected atom, got {other:?}"))),
    }
}

fn parse_half(s: &str) -> Result<i64, FreeAlgError> {
    // returns twice the value
    if let Some(stripped) = s.strip_suffix("/2") {
        stripped
            .parse::<i64>()
            .map_err(|_| FreeAlgError::Parse(s.to_string()))
    } else {
        s.parse::<i64>()
            .map(|v| 2 * v)
            .map_err(|_| FreeAlgError::Parse(s.to_string()))
    }
}

fn parse_sum(toks: &[Tok], pos: &mut usize, rank: usize) -> Result<Element, FreeAlgError> {
    expect(toks, pos, &Tok::Open)?;
    let head = atom(toks, pos)?;
    if head != "sum" {
        return Err(FreeAlgError::Parse(format!("expected sum, got {head}")));
    }
    let mut out = Element::zero();
    while toks.get(*pos) == Some(&Tok::Open) {
        let (w, c) = parse_term(toks, pos, rank)?;
        out.add_term(w, c);
    }
    expect(toks, pos, &Tok::Close)?;
    Ok(out)
}

fn parse_term(toks: &[Tok], pos: &mut usize, rank: usize) -> Result<(Word, Scalar), FreeAlgError> {
    expect(toks, pos, &Tok::Open)?;
    let head = atom(toks, pos)?;
    if head != "term" {
        return Err(FreeAlgError::Parse(format!("expected term, got {head}")));
    }
    let coeff = Scalar::parse(&atom(toks, pos)?.replace('{', "(").replace('}', ")"))?;
    let mut word = Word::unit(rank);
    while toks.get(*pos) == Some(&Tok::Open) {
        *pos += 1;
        let kind = atom(toks, pos)?;
        match kind.as_str() {
            "F" => word.fpart.push(
                atom(toks, pos)?
                    .parse::<u8>()
                    .map_err(|_| FreeAlgError::Parse("bad F index".into()))?,
            ),
            "E" => word.epart.push(
                atom(toks, pos)?
                    .parse::<u8>()
                    .map_err(|_| FreeAlgError::Parse("bad E index".into()))?,
            ),
            "K" => {
                let mut twice = Vec::new();
                while let Some(Tok::Atom(_)) = toks.get(*pos) {
                    twice.push(parse_half(&atom(toks, pos)?)?);
                }
                if twice.len() != rank + 1 {
                    return Err(FreeAlgError::Parse("K vector length mismatch".into()));
                }
                word.kpart = word.kpart.mul(&KMonomial { twice });
            }
            other => return Err(FreeAlgError::Parse(format!("unknown letter {other}"))),
        }
        expect(toks, pos, &Tok::Close)?;
    }
    expect(toks, pos, &Tok::Close)?;
    Ok((word, coeff))
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dump())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn datum11() -> RootDatum {
        RootDatum::build(1, 1).unwrap()
    }

    fn k(i: usize, e: i64, d: &RootDatum) -> Element {
        Element::gen_ki(i, e, d.rank)
    }

    #[test]
    fn unit_laws() {
        let d = datum11();
        let x = Element::gen_e(1, d.rank).mul(&Element::gen_f(0, d.rank), &d);
        assert_eq!(Element::one(d.rank).mul(&x, &d), x);
        assert_eq!(x.mul(&Element::one(d.rank), &d), x);
    }

    #[test]
    fn cross_relation_diagonal() {
        // χ₁⁺ χ₁⁻ = (−1)^{[1][1]} χ₁⁻ χ₁⁺ + (K₁ − K₁⁻¹)/(q₁ − q₁⁻¹)
        let d = datum11();
        let lhs = Element::gen_e(1, d.rank).mul(&Element::gen_f(1, d.rank), &d);
        let c1 = &Scalar::one() / &(&Scalar::v_pow(2) - &Scalar::v_pow(-2));
        let expect = Element::gen_f(1, d.rank)
            .mul(&Element::gen_e(1, d.rank), &d)
            .neg()
            .add(&k(1, 1, &d).sub(&k(1, -1, &d)).scale(&c1));
        assert_eq!(lhs, expect);
    }

    #[test]
    fn cross_relation_off_diagonal() {
        // [χ_i^+, χ_j^-] = 0 for i ≠ j, i.e. the product is the signed swap.
        let d = datum11();
        for i in 0..=2usize {
            for j in 0..=2usize {
                if i == j {
                    continue;
                }
                let lhs = Element::gen_e(i, d.rank).mul(&Element::gen_f(j, d.rank), &d);
                let mut rhs = Element::gen_f(j, d.rank).mul(&Element::gen_e(i, d.rank), &d);
                if d.simple_parity[i] == 1 && d.simple_parity[j] == 1 {
                    rhs = rhs.neg();
                }
                assert_eq!(lhs, rhs, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn k_commutation_uses_bilinear_form() {
        let d = datum11();
        for i in 0..=2usize {
            for j in 0..=2usize {
                let ai = crate::rootsys::Weight::simple(i, d.rank);
                let aj = crate::rootsys::Weight::simple(j, d.rank);
                let pow = Scalar::q_pow(d.bilinear(&ai, &aj));
                // K_i χ_j^+ = q^{(α_i,α_j)} χ_j^+ K_i
                let lhs = k(i, 1, &d).mul(&Element::gen_e(j, d.rank), &d);
                let rhs = Element::gen_e(j, d.rank).mul(&k(i, 1, &d), &d).scale(&pow);
                assert_eq!(lhs, rhs, "E case i={i} j={j}");
                // K_i χ_j^- = q^{-(α_i,α_j)} χ_j^- K_i
                let lhs = k(i, 1, &d).mul(&Element::gen_f(j, d.rank), &d);
                let rhs = Element::gen_f(j, d.rank)
                    .mul(&k(i, 1, &d), &d)
                    .scale(&pow.inv());
                assert_eq!(lhs, rhs, "F case i={i} j={j}");
            }
        }
    }

    #[test]
    fn half_delta_is_central() {
        let d = datum11();
        let kd = Element::gen_k_half_delta(1, d.rank);
        for g in [
            Element::gen_e(0, d.rank),
            Element::gen_e(2, d.rank),
            Element::gen_f(1, d.rank),
            Element::gen_e(1, d.rank).mul(&Element::gen_f(2, d.rank), &d),
        ] {
            assert_eq!(kd.mul(&g, &d), g.mul(&kd, &d));
        }
        assert_eq!(
            kd.mul(&Element::gen_k_half_delta(-1, d.rank), &d),
            Element::one(d.rank)
        );
    }

    fn random_word(rng: &mut StdRng, d: &RootDatum, max_len: usize) -> Element {
        let mut el = Element::one(d.rank);
        for _ in 0..rng.gen_range(0..=max_len) {
            let letter = rng.gen_range(0..=d.rank);
            let which = rng.gen_range(0..3);
            let g = match which {
                0 => Element::gen_e(letter, d.rank),
                1 => Element::gen_f(letter, d.rank),
                _ => Element::gen_ki(letter, if rng.gen_bool(0.5) { 1 } else { -1 }, d.rank),
            };
            el = el.mul(&g, d);
        }
        el
    }

    #[test]
    fn associativity_random() {
        let d = datum11();
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..40 {
            let x = random_word(&mut rng, &d, 3);
            let y = random_word(&mut rng, &d, 3);
            let z = random_word(&mut rng, &d, 3);
            assert_eq!(x.mul(&y, &d).mul(&z, &d), x.mul(&y.mul(&z, &d), &d));
        }
    }

    #[test]
    fn weight_and_parity_multiplicative() {
        let d = datum11();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..30 {
            let x = random_word(&mut rng, &d, 3);
            let y = random_word(&mut rng, &d, 3);
            let p = x.mul(&y, &d);
            if p.is_zero() {
                continue;
            }
            let (wx, wy) = (x.weight(&d).unwrap(), y.weight(&d).unwrap());
            assert_eq!(p.weight(&d).unwrap(), wx.add(&wy));
            let (px, py) = (x.parity(&d).unwrap(), y.parity(&d).unwrap());
            assert_eq!(p.parity(&d).unwrap(), (px + py) % 2);
        }
    }

    #[test]
    fn qbracket_matches_explicit_twist() {
        let d = datum11();
        // (α₁, α₀) = 2, so [[χ₁⁺, χ₀⁺]] = [χ₁⁺, χ₀⁺]_{q^{-2}}
        let x = Element::gen_e(1, d.rank);
        let y = Element::gen_e(0, d.rank);
        let lhs = x.qbracket(&y, &d).unwrap();
        let rhs = x.bracket(&y, &Scalar::q_pow(-2), &d).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_jacobi_identity() {
        // [[X,Y]_μ, Z]_ω = [X,[Y,Z]_ν]_{μων⁻¹}
        //                + (−1)^{[Y][Z]} ν [[X,Z]_{ων⁻¹}, Y]_{μν⁻¹}
        let d = datum11();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..25 {
            let x = random_word(&mut rng, &d, 2);
            let y = random_word(&mut rng, &d, 2);
            let z = random_word(&mut rng, &d, 2);
            if x.is_zero() || y.is_zero() || z.is_zero() {
                continue;
            }
            let mu = Scalar::v_pow(rng.gen_range(-2..=2));
            let nu = Scalar::v_pow(rng.gen_range(-2..=2));
            let om = Scalar::v_pow(rng.gen_range(-2..=2));
            let lhs = x
                .bracket(&y, &mu, &d)
                .unwrap()
                .bracket(&z, &om, &d)
                .unwrap();
            let t1 = x
                .bracket(
                    &y.bracket(&z, &nu, &d).unwrap(),
                    &(&(&mu * &om) * &nu.inv()),
                    &d,
                )
                .unwrap();
            let mut t2 = x
                .bracket(&z, &(&om * &nu.inv()), &d)
                .unwrap()
                .bracket(&y, &(&mu * &nu.inv()), &d)
                .unwrap()
                .scale(&nu);
            if y.parity(&d).unwrap() == 1 && z.parity(&d).unwrap() == 1 {
                t2 = t2.neg();
            }
            assert_eq!(lhs, t1.add(&t2));
        }
    }

    #[test]
    fn omega_generator_images() {
        let d = datum11();
        // Ω(χ₁⁺) = d₂ χ₁⁻ = χ₁⁻; Ω(χ₀⁺) = d₁ χ₀⁻ = −χ₀⁻
        assert_eq!(
            Element::gen_e(1, d.rank).omega(&d),
            Element::gen_f(1, d.rank)
        );
        assert_eq!(
            Element::gen_e(0, d.rank).omega(&d),
            Element::gen_f(0, d.rank).neg()
        );
        assert_eq!(
            Element::gen_k_half_delta(1, d.rank).omega(&d),
            Element::gen_k_half_delta(-1, d.rank)
        );
    }

    #[test]
    fn omega_is_involutive_and_anti_multiplicative() {
        let d = datum11();
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..40 {
            let x = random_word(&mut rng, &d, 3);
            let y = random_word(&mut rng, &d, 3);
            assert_eq!(x.omega(&d).omega(&d), x);
            assert_eq!(x.mul(&y, &d).omega(&d), y.omega(&d).mul(&x.omega(&d), &d));
        }
    }

    #[test]
    fn dump_parse_round_trip() {
        let d = datum11();
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..25 {
            let x = random_word(&mut rng, &d, 4)
                .mul(&Element::gen_k_half_delta(1, d.rank), &d)
                .add(&random_word(&mut rng, &d, 2));
            let text = x.dump();
            let back = Element::parse(&text, d.rank).unwrap();
            assert_eq!(back, x);
            assert_eq!(back.dump(), text);
        }
    }

    #[test]
    fn antipode_axiom_on_generators() {
        // m ∘ (S ⊗ id) ∘ Δ(g) = ε(g)·1 for every generator.
        let d = datum11();
        let antipode_of_word = |w: &Word| -> Element {
            if w.epart.len() == 1 && w.fpart.is_empty() && w.kpart.is_one() {
                antipode(Generator::EPlus(w.epart[0] as usize), &d)
            } else if w.fpart.len() == 1 && w.epart.is_empty() && w.kpart.is_one() {
                antipode(Generator::FMinus(w.fpart[0] as usize), &d)
            } else if w == &Word::unit(d.rank) {
                Element::one(d.rank)
            } else {
                // single K_i^{±1}
                let idx = w
                    .kpart
                    .twice
                    .iter()
                    .position(|&t| t != 0)
                    .expect("K word");
                antipode(Generator::K(idx, w.kpart.twice[idx] / 2), &d)
            }
        };
        let gens: Vec<Generator> = (0..=d.rank)
            .flat_map(|i| {
                [
                    Generator::EPlus(i),
                    Generator::FMinus(i),
                    Generator::K(i, 1),
                    Generator::K(i, -1),
                ]
            })
            .collect();
        for g in gens {
            let cp = coproduct(g, &d);
            let mut acc = Element::zero();
            for ((a, b), c) in &cp.terms {
                let sa = antipode_of_word(a);
                let img = sa.mul(&Element::from_word(b.clone(), Scalar::one()), &d);
                acc = acc.add(&img.scale(c));
            }
            assert_eq!(acc, Element::one(d.rank).scale(&counit(g)), "{g:?}");
        }
    }

    #[test]
    fn coproduct_short_products_respect_sign_rule() {
        // Δ is multiplicative: Δ(χ_i^+ χ_j^+) = Δ(χ_i^+) Δ(χ_j^+); check
        // that expanding the right side with the super sign rule matches
        // the coproduct of the realized product term-by-term through the
        // tensor algebra (structural smoke test at small degree).
        let d = datum11();
        let cp1 = coproduct(Generator::EPlus(1), &d);
        let cp2 = coproduct(Generator::EPlus(2), &d);
        let prod = cp1.mul(&cp2, &d);
        // (χ₁⁺⊗1 + K₁⊗χ₁⁺)(χ₂⁺⊗1 + K₂⊗χ₂⁺) has four pure tensors
        assert_eq!(prod.terms.len(), 4);
        // the (K₁χ₂⁺ ⊗ χ₁⁺) term acquires no sign ([1] even for K)
        let k1e2 = k(1, 1, &d).mul(&Element::gen_e(2, d.rank), &d);
        let (w, c) = k1e2.terms.iter().next().unwrap();
        let coeff = prod
            .terms
            .get(&(
                w.clone(),
                Element::gen_e(1, d.rank).terms.keys().next().unwrap().clone(),
            ))
            .expect("missing tensor term");
        assert_eq!(coeff, c);
    }
}
