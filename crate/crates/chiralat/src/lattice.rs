//! Construction of the lattices under study: hyperbolic and definite direct
//! sums of U, A_n, D_n, E_n, and rank-1 diagonal summands, with exact Gram
//! matrices, signatures, and dual basis vectors.

use crate::linalg::{self, IMat, Int, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Coordinate vector in the lattice basis.
pub type Vector = Vec<Int>;

pub fn vec_i64(v: &[i64]) -> Vector {
    v.iter().map(|&x| Int::from(x)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SummandKind {
    U,
    A,
    D,
    E,
    #[serde(rename = "diag")]
    Diag,
}

impl fmt::Display for SummandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SummandKind::U => write!(f, "U"),
            SummandKind::A => write!(f, "A"),
            SummandKind::D => write!(f, "D"),
            SummandKind::E => write!(f, "E"),
            SummandKind::Diag => write!(f, "diag"),
        }
    }
}

fn default_scale() -> u32 {
    1
}
fn default_sign() -> i8 {
    1
}
fn default_count() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summand {
    pub kind: SummandKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<i64>>,
    #[serde(default = "default_scale", skip_serializing_if = "is_one")]
    pub scale: u32,
    #[serde(default = "default_sign", skip_serializing_if = "is_plus")]
    pub sign: i8,
    #[serde(default = "default_count", skip_serializing_if = "is_one")]
    pub count: u32,
}

fn is_one(x: &u32) -> bool {
    *x == 1
}
fn is_plus(x: &i8) -> bool {
    *x == 1
}

impl Summand {
    pub fn simple(kind: SummandKind, n: u32) -> Self {
        Summand {
            kind,
            n: Some(n),
            entries: None,
            scale: 1,
            sign: 1,
            count: 1,
        }
    }

    pub fn diag(entries: Vec<i64>) -> Self {
        Summand {
            kind: SummandKind::Diag,
            n: None,
            entries: Some(entries),
            scale: 1,
            sign: 1,
            count: 1,
        }
    }

    pub fn rank(&self) -> Result<usize, LatticeError> {
        match self.kind {
            SummandKind::U => Ok(2),
            SummandKind::A | SummandKind::D | SummandKind::E => {
                let n = self.n.ok_or_else(|| {
                    LatticeError::InvalidSummand(format!("kind {} requires n", self.kind))
                })?;
                match self.kind {
                    SummandKind::A if n >= 1 => Ok(n as usize),
                    SummandKind::D if n >= 2 => Ok(n as usize),
                    SummandKind::E if (6..=8).contains(&n) => Ok(n as usize),
                    _ => Err(LatticeError::InvalidSummand(format!(
                        "invalid n = {} for kind {}",
                        n, self.kind
                    ))),
                }
            }
            SummandKind::Diag => {
                let e = self.entries.as_ref().ok_or_else(|| {
                    LatticeError::InvalidSummand("diag requires entries".into())
                })?;
                if e.is_empty() {
                    return Err(LatticeError::InvalidSummand("diag entries empty".into()));
                }
                Ok(e.len())
            }
        }
    }

    /// Gram block for one copy of this summand (scale and sign applied).
    pub fn gram_block(&self) -> Result<IMat, LatticeError> {
        let r = self.rank()?;
        if self.scale == 0 {
            return Err(LatticeError::InvalidSummand("scale must be positive".into()));
        }
        if self.sign != 1 && self.sign != -1 {
            return Err(LatticeError::InvalidSummand("sign must be +1 or -1".into()));
        }
        let mut g = linalg::imat_zero(r, r);
        fn edge(g: &mut IMat, i: usize, j: usize) {
            g[i][j] = Int::from(-1);
            g[j][i] = Int::from(-1);
        }
        match self.kind {
            SummandKind::U => {
                g[0][1] = Int::one();
                g[1][0] = Int::one();
            }
            SummandKind::A => {
                for i in 0..r {
                    g[i][i] = Int::from(2);
                }
                for i in 0..r.saturating_sub(1) {
                    edge(&mut g, i, i + 1);
                }
            }
            SummandKind::D => {
                for i in 0..r {
                    g[i][i] = Int::from(2);
                }
                // path on the first r-1 vertices, fork at vertex r-3
                for i in 0..r.saturating_sub(2) {
                    edge(&mut g, i, i + 1);
                }
                if r >= 3 {
                    edge(&mut g, r - 3, r - 1);
                }
            }
            SummandKind::E => {
                for i in 0..r {
                    g[i][i] = Int::from(2);
                }
                // 1-based labels: chain e_r - e_{r-1} - ... - e_5 - e_4 - e_3 - e_1,
                // branch e_4 - e_2. Fixed by the e_8^* dual-vector self check.
                for k in 5..=r {
                    edge(&mut g, k - 1, k - 2);
                }
                edge(&mut g, 3, 2); // e4 - e3
                edge(&mut g, 2, 0); // e3 - e1
                edge(&mut g, 3, 1); // e4 - e2
            }
            SummandKind::Diag => {
                for (i, &e) in self.entries.as_ref().unwrap().iter().enumerate() {
                    if e == 0 {
                        return Err(LatticeError::InvalidSummand(
                            "diag entries must be nonzero".into(),
                        ));
                    }
                    g[i][i] = Int::from(e);
                }
            }
        }
        let factor = Int::from(self.scale as i64 * self.sign as i64);
        for row in g.iter_mut() {
            for v in row.iter_mut() {
                *v *= &factor;
            }
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeSpec {
    pub summands: Vec<Summand>,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum LatticeError {
    #[error("malformed lattice spec: {0}")]
    Parse(String),
    #[error("invalid summand: {0}")]
    InvalidSummand(String),
    #[error("empty summand list")]
    Empty,
    #[error("degenerate Gram matrix")]
    Degenerate,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("index out of range")]
    IndexOutOfRange,
    #[error("no base point preset applies to this lattice")]
    NoBasePoint,
}

/// Parse a lattice spec document (JSON array of summands).
pub fn parse_lattice_spec(text: &str) -> Result<LatticeSpec, LatticeError> {
    let spec: LatticeSpec =
        serde_json::from_str(text).map_err(|e| LatticeError::Parse(e.to_string()))?;
    validate_spec(&spec)?;
    Ok(spec)
}

fn validate_spec(spec: &LatticeSpec) -> Result<(), LatticeError> {
    if spec.summands.is_empty() {
        return Err(LatticeError::Empty);
    }
    for s in &spec.summands {
        s.rank()?;
        if s.count == 0 {
            return Err(LatticeError::InvalidSummand("count must be positive".into()));
        }
    }
    Ok(())
}

/// Parse a lattice name such as "U+A2+2E8", "-A1+<6>+3A1", "U(2)+E6(2)".
///
/// Grammar per term: `['-'] [multiplicity] (U | A<n> | D<n> | E<n> | '<'q'>') ['(' scale ')']`.
/// `-A1` and `<q>` are normalized to diagonal summands.
pub fn parse_lattice_name(name: &str) -> Result<LatticeSpec, LatticeError> {
    let mut summands = Vec::new();
    for raw in name.split('+') {
        let term = raw.trim();
        if term.is_empty() {
            return Err(LatticeError::Parse(format!("empty term in '{name}'")));
        }
        let (neg, rest) = match term.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, term),
        };
        let mut chars = rest.char_indices().peekable();
        let mut mult_end = 0;
        while let Some(&(i, c)) = chars.peek() {
            if c.is_ascii_digit() {
                mult_end = i + c.len_utf8();
                chars.next();
            } else {
                break;
            }
        }
        let mult: u32 = if mult_end == 0 {
            1
        } else {
            rest[..mult_end]
                .parse()
                .map_err(|_| LatticeError::Parse(format!("bad multiplicity in '{term}'")))?
        };
        if mult == 0 {
            return Err(LatticeError::Parse(format!("zero multiplicity in '{term}'")));
        }
        let body = &rest[mult_end..];
        // split off trailing (scale)
        let (core, scale) = if let Some(idx) = body.find('(') {
            let close = body
                .rfind(')')
                .ok_or_else(|| LatticeError::Parse(format!("unclosed '(' in '{term}'")))?;
            let sc: u32 = body[idx + 1..close]
                .parse()
                .map_err(|_| LatticeError::Parse(format!("bad scale in '{term}'")))?;
            (&body[..idx], sc)
        } else {
            (body, 1)
        };
        let mut s = if core == "U" {
            Summand::simple(SummandKind::U, 2)
        } else if let Some(q) = core.strip_prefix('<').and_then(|c| c.strip_suffix('>')) {
            let q: i64 = q
                .parse()
                .map_err(|_| LatticeError::Parse(format!("bad diagonal entry in '{term}'")))?;
            Summand::diag(vec![q])
        } else {
            let mut cs = core.chars();
            let kind = match cs.next() {
                Some('A') => SummandKind::A,
                Some('D') => SummandKind::D,
                Some('E') => SummandKind::E,
                _ => return Err(LatticeError::Parse(format!("unknown summand '{term}'"))),
            };
            let n: u32 = cs
                .as_str()
                .parse()
                .map_err(|_| LatticeError::Parse(format!("bad rank in '{term}'")))?;
            Summand::simple(kind, n)
        };
        s.scale = scale;
        if neg {
            // -A1 is stored as the rank-1 diagonal <-2>; other negated
            // summands keep their kind with sign -1.
            if s.kind == SummandKind::A && s.n == Some(1) && scale == 1 {
                s = Summand::diag(vec![-2]);
            } else if s.kind == SummandKind::Diag {
                s.entries = Some(s.entries.unwrap().into_iter().map(|e| -e).collect());
            } else {
                s.sign = -1;
            }
        }
        s.n = match s.kind {
            SummandKind::U | SummandKind::Diag => None,
            _ => s.n,
        };
        s.count = mult;
        summands.push(s);
    }
    let spec = LatticeSpec { summands };
    validate_spec(&spec)?;
    Ok(spec)
}

/// Resolve either a named preset ("U+A2+2E8") or an inline JSON document.
pub fn resolve_lattice_spec(input: &str) -> Result<LatticeSpec, LatticeError> {
    let t = input.trim();
    if t.starts_with('[') {
        parse_lattice_spec(t)
    } else {
        parse_lattice_name(t)
    }
}

#[derive(Debug, Clone)]
pub struct Lattice {
    pub rank: usize,
    pub gram: IMat,
    /// (start index, summand with count 1) for each expanded copy.
    pub summand_offsets: Vec<(usize, Summand)>,
    pub signature: (usize, usize),
    pub spec: LatticeSpec,
}

/// Assemble the block-diagonal Gram matrix and exact signature.
pub fn build_lattice(spec: &LatticeSpec) -> Result<Lattice, LatticeError> {
    validate_spec(spec)?;
    let mut blocks = Vec::new();
    let mut offsets = Vec::new();
    let mut rank = 0usize;
    for s in &spec.summands {
        let block = s.gram_block()?;
        for _ in 0..s.count {
            let mut one = s.clone();
            one.count = 1;
            offsets.push((rank, one));
            rank += block.len();
            blocks.push(block.clone());
        }
    }
    let mut gram = linalg::imat_zero(rank, rank);
    let mut at = 0usize;
    for block in &blocks {
        for (i, row) in block.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                gram[at + i][at + j] = v.clone();
            }
        }
        at += block.len();
    }
    let (pos, zero, neg) = linalg::inertia_int(&gram);
    if zero != 0 {
        return Err(LatticeError::Degenerate);
    }
    Ok(Lattice {
        rank,
        gram,
        summand_offsets: offsets,
        signature: (pos, neg),
        spec: spec.clone(),
    })
}

impl Lattice {
    pub fn from_name(name: &str) -> Result<Self, LatticeError> {
        build_lattice(&parse_lattice_name(name)?)
    }

    pub fn inner_product(&self, x: &[Int], y: &[Int]) -> Result<Int, LatticeError> {
        if x.len() != self.rank || y.len() != self.rank {
            return Err(LatticeError::DimensionMismatch);
        }
        Ok(linalg::bilinear(&self.gram, x, y))
    }

    pub fn norm(&self, x: &[Int]) -> Int {
        linalg::bilinear(&self.gram, x, x)
    }

    pub fn det(&self) -> Int {
        linalg::imat_det(&self.gram)
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank).all(|i| {
            let r: Int = &self.gram[i][i] % 2;
            r.is_zero()
        })
    }

    /// Component of x lying in the given expanded summand.
    pub fn summand_component(&self, summand: usize, x: &[Int]) -> Result<Vec<Int>, LatticeError> {
        let (start, s) = self
            .summand_offsets
            .get(summand)
            .ok_or(LatticeError::IndexOutOfRange)?;
        let r = s.rank()?;
        Ok(x[*start..*start + r].to_vec())
    }

    /// Dual basis vector of the i-th basis vector of the given summand:
    /// rational w with w . e_j = delta_ij within the summand, 0 elsewhere.
    pub fn dual_basis_vector(&self, summand: usize, i: usize) -> Result<Vec<Rat>, LatticeError> {
        let (start, s) = self
            .summand_offsets
            .get(summand)
            .ok_or(LatticeError::IndexOutOfRange)?;
        let r = s.rank()?;
        if i >= r {
            return Err(LatticeError::IndexOutOfRange);
        }
        let block = s.gram_block()?;
        let inv = linalg::rmat_inverse(&linalg::imat_to_rmat(&block))
            .ok_or(LatticeError::Degenerate)?;
        let mut w = vec![Rat::zero(); self.rank];
        for k in 0..r {
            w[start + k] = inv[k][i].clone();
        }
        Ok(w)
    }

    /// Same, but demanding an integral answer (unimodular summands like E8).
    pub fn dual_basis_vector_int(&self, summand: usize, i: usize) -> Result<Vector, LatticeError> {
        let w = self.dual_basis_vector(summand, i)?;
        w.iter()
            .map(|x| {
                if x.is_integer() {
                    Ok(x.to_integer())
                } else {
                    Err(LatticeError::InvalidSummand(
                        "dual basis vector is not integral".into(),
                    ))
                }
            })
            .collect()
    }
}

/// Startup self check: the E8 Gram convention must reproduce the dual-vector
/// formula e8* = 2e8+3e7+4e6+5e5+6e4+4e3+3e2+2e1 with (e8*)^2 = 2, (e1*)^2 = 4.
pub fn e8_self_check() -> Result<(), LatticeError> {
    let l = Lattice::from_name("E8")?;
    let e8s = l.dual_basis_vector_int(0, 7)?;
    // coefficients of (e1, e2, ..., e8)
    let want = vec_i64(&[2, 3, 4, 6, 5, 4, 3, 2]);
    if e8s != want {
        return Err(LatticeError::InvalidSummand(format!(
            "E8 dual formula mismatch: got {e8s:?}"
        )));
    }
    if l.norm(&e8s) != Int::from(2) {
        return Err(LatticeError::InvalidSummand("(e8*)^2 != 2".into()));
    }
    let e1s = l.dual_basis_vector_int(0, 0)?;
    if l.norm(&e1s) != Int::from(4) {
        return Err(LatticeError::InvalidSummand("(e1*)^2 != 4".into()));
    }
    Ok(())
}

/// Names of the lattice families this crate ships presets for.
pub fn catalog_names() -> Vec<String> {
    let mut names = Vec::new();
    let families: [(&str, u32); 11] = [
        ("-A1+<6>", 9),
        ("-A1+A2", 9),
        ("U+A2", 9),
        ("U+A2+D4", 6),
        ("-A1+<6>+E8", 5),
        ("-A1+A2+E8", 5),
        ("U+A2+E8", 5),
        ("U+A2+D4+E8", 2),
        ("-A1+<6>+2E8", 1),
        ("-A1+A2+2E8", 1),
        ("U+A2+2E8", 1),
    ];
    for (base, tmax) in families {
        for t in 0..=tmax {
            match t {
                0 => names.push(base.to_string()),
                1 => names.push(format!("{base}+A1")),
                _ => names.push(format!("{base}+{t}A1")),
            }
        }
    }
    for extra in [
        "U(2)+E6(2)",
        "U(2)+A2",
        "U+E6(2)",
        "U(2)+A2+D4",
        "U(2)+A2+2D4",
        "U+A2+2D4",
        "U(2)+A2+E8",
        "U(2)+A2+D4+E8",
        "U(2)+A2+2E8",
        "U+A2+E8(2)",
        "U(2)+A2+E8(2)",
    ] {
        names.push(extra.to_string());
    }
    names
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn parse_json_spec() {
        let s = parse_lattice_spec(r#"[{"kind":"U"},{"kind":"A","n":2}]"#).unwrap();
        assert_eq!(s.summands.len(), 2);
        let l = build_lattice(&s).unwrap();
        assert_eq!(l.rank, 4);
        assert_eq!(l.signature, (3, 1));
        // round trip
        let txt = serde_json::to_string(&s).unwrap();
        assert_eq!(parse_lattice_spec(&txt).unwrap(), s);
    }

    #[test]
    fn parse_diag_spec() {
        let s = parse_lattice_spec(r#"[{"kind":"diag","entries":[-2]}]"#).unwrap();
        let l = build_lattice(&s).unwrap();
        assert_eq!(l.gram[0][0], int(-2));
    }

    #[test]
    fn empty_spec_rejected() {
        assert!(parse_lattice_spec("[]").is_err());
    }

    #[test]
    fn unknown_key_rejected() {
        assert!(parse_lattice_spec(r#"[{"kind":"U","bogus":1}]"#).is_err());
    }

    #[test]
    fn invalid_e_rank_rejected() {
        assert!(parse_lattice_name("E5").is_err());
        assert!(parse_lattice_spec(r#"[{"kind":"E","n":9}]"#).is_err());
    }

    #[test]
    fn build_u_a2() {
        let l = Lattice::from_name("U+A2").unwrap();
        assert_eq!(l.rank, 4);
        assert_eq!(l.gram[0][1], int(1));
        assert_eq!(l.gram[2][2], int(2));
        assert_eq!(l.gram[2][3], int(-1));
        assert_eq!(l.signature, (3, 1));
    }

    #[test]
    fn build_neg_a1_a2() {
        let l = Lattice::from_name("-A1+A2").unwrap();
        assert_eq!(l.rank, 3);
        assert_eq!(l.det(), int(-6));
        assert_eq!(l.signature, (2, 1));
    }

    #[test]
    fn build_bracket_6() {
        let l = Lattice::from_name("<6>").unwrap();
        assert_eq!(l.rank, 1);
        assert_eq!(l.gram[0][0], int(6));
        assert_eq!(l.signature, (1, 0));
    }

    #[test]
    fn signatures() {
        assert_eq!(Lattice::from_name("U").unwrap().signature, (1, 1));
        assert_eq!(Lattice::from_name("U+A2+2E8").unwrap().signature, (19, 1));
        assert_eq!(Lattice::from_name("E8").unwrap().signature, (8, 0));
    }

    #[test]
    fn inner_products() {
        let l = Lattice::from_name("U+A2").unwrap();
        let x = vec_i64(&[1, 1, 0, 0]);
        assert_eq!(l.inner_product(&x, &x).unwrap(), int(2));
        let l2 = Lattice::from_name("-A1+A2").unwrap();
        let y = vec_i64(&[3, -4, -2]);
        assert_eq!(l2.inner_product(&y, &y).unwrap(), int(6));
        let zero = vec_i64(&[0, 0, 0]);
        assert_eq!(l2.inner_product(&zero, &zero).unwrap(), int(0));
        assert!(l.inner_product(&x, &zero).is_err());
    }

    #[test]
    fn e8_dual_formula() {
        e8_self_check().unwrap();
    }

    #[test]
    fn a2_dual_vector() {
        let l = Lattice::from_name("A2").unwrap();
        let w = l.dual_basis_vector(0, 0).unwrap();
        assert_eq!(w[0], Rat::new(int(2), int(3)));
        assert_eq!(w[1], Rat::new(int(1), int(3)));
    }

    #[test]
    fn scaled_summands() {
        let l = Lattice::from_name("U(2)").unwrap();
        assert_eq!(l.gram[0][1], int(2));
        let e62 = Lattice::from_name("E6(2)").unwrap();
        assert_eq!(e62.gram[0][0], int(4));
        assert_eq!(e62.rank, 6);
    }

    #[test]
    fn multiplicity_expansion() {
        let l = Lattice::from_name("U+A2+2E8+A1").unwrap();
        assert_eq!(l.rank, 21);
        assert_eq!(l.summand_offsets.len(), 5);
        assert_eq!(l.summand_offsets[2].0, 4);
        assert_eq!(l.summand_offsets[3].0, 12);
        let k = Lattice::from_name("-A1+<6>+3A1").unwrap();
        assert_eq!(k.rank, 5);
        assert_eq!(k.gram[1][1], int(6));
        assert_eq!(k.gram[0][0], int(-2));
    }

    #[test]
    fn catalog_all_build() {
        for name in catalog_names() {
            let l = Lattice::from_name(&name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(l.det() != Int::zero());
            assert!(l.is_even(), "{name} not even");
        }
    }

    #[test]
    fn signature_additivity_random_pairs() {
        // signature(L1 + L2) = signature(L1) + signature(L2)
        let names = ["U", "A2", "E8", "-A1+A2", "<6>", "D4", "U(2)"];
        for a in names {
            for b in names {
                let la = Lattice::from_name(a).unwrap();
                let lb = Lattice::from_name(b).unwrap();
                let combined = Lattice::from_name(&format!("{a}+{b}")).unwrap();
                assert_eq!(
                    combined.signature,
                    (
                        la.signature.0 + lb.signature.0,
                        la.signature.1 + lb.signature.1
                    )
                );
            }
        }
    }

    #[test]
    fn dual_defining_products_catalog() {
        for name in ["A2", "E8", "D4", "E6", "E7", "<6>"] {
            let l = Lattice::from_name(name).unwrap();
            for i in 0..l.rank {
                let w = l.dual_basis_vector(0, i).unwrap();
                for j in 0..l.rank {
                    let prod: Rat = (0..l.rank)
                        .map(|k| &w[k] * Rat::from_integer(l.gram[k][j].clone()))
                        .sum();
                    let want = if i == j { Rat::one() } else { Rat::zero() };
                    assert_eq!(prod, want, "{name} i={i} j={j}");
                }
            }
        }
    }
}
