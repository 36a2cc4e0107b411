//! Line-by-line verification of the printed commutator tables.
//!
//! Each table line is transcribed literally as a pair `(lhs, rhs)` of
//! polynomials over free indices; the checker evaluates it for every index
//! tuple and, where a line fails, re-expresses the engine's value of the
//! left-hand side in the generator basis (or over monomials when the value is
//! not quadratic).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::closure::generator_span;
use super::field::Scalar;
use super::generators::{
    build_generator, build_ladder, displaced, reduced_dispersion, GeneratorKind, LadderSign,
};
use super::poly::{anticommutator, commutator, Algebra, Convention, WeylPolynomial};
use super::span::SpanBasis;
use crate::metric::Metric;

macro_rules! table_ids {
    ($($id:ident),* $(,)?) => {
        /// A printed table of identities.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum TableId { $($id),* }

        impl TableId {
            pub const ALL: &'static [TableId] = &[$(TableId::$id),*];

            pub fn name(self) -> &'static str {
                match self { $(TableId::$id => stringify!($id)),* }
            }
        }
    };
}

table_ids!(
    Eq10, Eq14, Eq15, Eq16, Eq17, Eq18, Eq19, Eq20, Eq21, Eq22, Eq23, Eq24, Eq27, Eq28, Eq66, Eq67,
    Eq68, Eq69, Eq70, Eq71, Eq72, Eq73, Eq74, Eq75,
);

/// How the operators of a table are realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    /// One dimension, `x − X` and `p − P` with symbolic 𝓑.
    Displaced,
    /// One dimension, reduced generators with `[𝔵, 𝔭] = i`.
    Reduced,
    /// `N` dimensions, reduced generators with `[𝔭_μ, 𝔵_ν] = iη_{μν}`.
    Tensor,
}

impl TableId {
    pub fn frame(self) -> Frame {
        use TableId::*;
        match self {
            Eq10 | Eq15 | Eq28 => Frame::Displaced,
            Eq14 | Eq16 | Eq17 | Eq18 | Eq19 | Eq20 | Eq21 | Eq22 | Eq23 | Eq24 | Eq27 => {
                Frame::Reduced
            }
            _ => Frame::Tensor,
        }
    }

    /// Number of free indices per line.
    pub fn arity(self) -> usize {
        use TableId::*;
        match self {
            Eq66 | Eq67 | Eq68 => 2,
            Eq69 | Eq70 | Eq71 | Eq72 => 3,
            Eq73 | Eq74 | Eq75 => 4,
            _ => 0,
        }
    }

    /// Algebra the table is checked in; one-dimensional tables ignore the
    /// requested metric.
    pub fn algebra(self, metric: Metric) -> Algebra {
        match self.frame() {
            Frame::Displaced | Frame::Reduced => Algebra::one_dim(),
            Frame::Tensor => Algebra::new(metric, Convention::MomentumPosition),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown table {0:?}")]
pub struct UnknownTable(pub String);

impl FromStr for TableId {
    type Err = UnknownTable;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let digits = t
            .strip_prefix("Eq")
            .or_else(|| t.strip_prefix("eq"))
            .unwrap_or(t);
        TableId::ALL
            .iter()
            .copied()
            .find(|id| &id.name()[2..] == digits)
            .ok_or_else(|| UnknownTable(s.to_string()))
    }
}

impl Serialize for TableId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Engine value of a failed line's left-hand side.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrectedRhs {
    /// `"generators"` or `"monomials"`
    pub basis: &'static str,
    pub terms: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FailedIdentity {
    /// 1-based line within the table.
    pub line: usize,
    pub indices: Vec<usize>,
    pub residual: String,
    pub corrected_rhs: CorrectedRhs,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LineSummary {
    pub line: usize,
    pub checked: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableReport {
    pub table: TableId,
    pub metric: [usize; 2],
    pub checked: usize,
    pub failed: Vec<FailedIdentity>,
    pub lines: Vec<LineSummary>,
}

impl TableReport {
    pub fn all_hold(&self) -> bool {
        self.failed.is_empty()
    }

    pub fn line_holds(&self, line: usize) -> bool {
        self.lines
            .iter()
            .find(|l| l.line == line)
            .is_some_and(|l| l.failed == 0)
    }
}

/// Checks every line of `table` for every index tuple. Tensor tables are
/// limited to `N ≤ 4`.
pub fn verify_table(table: TableId, metric: Metric) -> TableReport {
    let algebra = table.algebra(metric);
    let n = algebra.dim();
    assert!(n <= 4, "table verification is limited to N ≤ 4");
    let tuples = index_tuples(n, table.arity());
    let span = generator_span(&algebra).ok().map(|(_, s)| s);

    let mut failed = Vec::new();
    let mut lines: Vec<LineSummary> = Vec::new();
    let mut checked = 0;
    for idx in &tuples {
        for (k, (lhs, rhs)) in table_lines(table, &algebra, idx).into_iter().enumerate() {
            let line = k + 1;
            if lines.len() < line {
                lines.push(LineSummary {
                    line,
                    checked: 0,
                    failed: 0,
                });
            }
            checked += 1;
            lines[k].checked += 1;
            let residual = &lhs - &rhs;
            if residual.is_zero() {
                continue;
            }
            lines[k].failed += 1;
            failed.push(FailedIdentity {
                line,
                indices: idx.clone(),
                residual: residual.to_string(),
                corrected_rhs: corrected(span.as_ref(), table.frame(), &lhs),
            });
        }
    }
    let m = algebra.metric;
    TableReport {
        table,
        metric: [m.n_plus, m.n_minus],
        checked,
        failed,
        lines,
    }
}

fn index_tuples(n: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

fn corrected(span: Option<&SpanBasis>, frame: Frame, value: &WeylPolynomial) -> CorrectedRhs {
    if frame != Frame::Displaced {
        if let Some(span) = span {
            if let Ok(e) = span.expand(value) {
                if e.in_span() {
                    let terms = span
                        .labels()
                        .iter()
                        .zip(&e.coefficients)
                        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                        .map(|(l, c)| (l.clone(), c.to_string()))
                        .collect();
                    return CorrectedRhs {
                        basis: "generators",
                        terms,
                    };
                }
            }
        }
    }
    CorrectedRhs {
        basis: "monomials",
        terms: value
            .terms()
            .map(|(m, c)| (m.to_string(), c.to_string()))
            .collect(),
    }
}

type Line = (WeylPolynomial, WeylPolynomial);

struct Ops<'a> {
    a: &'a Algebra,
}

impl Ops<'_> {
    fn x(&self, mu: usize) -> WeylPolynomial {
        self.a.x(mu)
    }
    fn p(&self, mu: usize) -> WeylPolynomial {
        self.a.p(mu)
    }
    fn eta(&self, mu: usize, nu: usize) -> Scalar {
        self.a.eta(mu, nu)
    }
    fn b(&self, kind: GeneratorKind, mu: usize, nu: usize) -> WeylPolynomial {
        build_generator(self.a, kind, mu, nu).expect("index in range")
    }
    fn z(&self, sign: LadderSign, mu: usize) -> WeylPolynomial {
        build_ladder(self.a, sign, mu).expect("index in range")
    }
    fn c(&self, a: &WeylPolynomial, b: &WeylPolynomial) -> WeylPolynomial {
        commutator(a, b).expect("same algebra")
    }
    fn ac(&self, a: &WeylPolynomial, b: &WeylPolynomial) -> WeylPolynomial {
        anticommutator(a, b).expect("same algebra")
    }
    fn int(&self, n: i64) -> WeylPolynomial {
        self.a.constant(Scalar::from_int(n))
    }
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d)
}

fn iq(n: i64, d: i64) -> Scalar {
    Scalar::imag_ratio(n, d)
}

/// Literal transcription of every line of `table` at index tuple `idx`.
pub fn table_lines(table: TableId, algebra: &Algebra, idx: &[usize]) -> Vec<Line> {
    use GeneratorKind::{Cross as X, Minus as M, Plus as P};
    use LadderSign::{Lowering as Lo, Raising as Ra};
    let o = Ops { a: algebra };
    let bsym = algebra.dispersion_symbol();
    match table {
        TableId::Eq10 => {
            let j = |k| displaced::dispersion(algebra, k);
            let four_i_b = bsym.scale(&iq(4, 1));
            vec![
                (o.c(&j(P), &j(M)), &four_i_b * &j(X)),
                (o.c(&j(M), &j(X)), &four_i_b * &j(P).scale(&s(-1))),
                (o.c(&j(X), &j(P)), &four_i_b * &j(M)),
            ]
        }
        TableId::Eq14 => {
            let (x, p) = (o.x(0), o.p(0));
            let (zm, zp) = (o.z(Lo, 0), o.z(Ra, 0));
            let j = |k| reduced_dispersion(algebra, k, 0, 0).expect("index in range");
            vec![
                (j(P), &bsym * &(&(&p * &p) + &(&x * &x))),
                (j(P), &bsym * &(&(&zm * &zp) + &(&zp * &zm))),
                (j(M), &bsym * &(&(&p * &p) - &(&x * &x))),
                (j(M), &bsym * &(&(&zm * &zm) + &(&zp * &zp))),
                (j(X), &bsym * &(&(&p * &x) + &(&x * &p))),
                (
                    j(X),
                    (&bsym * &(&(&zm * &zm) - &(&zp * &zp))).scale(&Scalar::i()),
                ),
            ]
        }
        TableId::Eq15 => {
            let zm = displaced::ladder(algebra, Lo);
            let zp = displaced::ladder(algebra, Ra);
            vec![(o.c(&zm, &zp), bsym.scale(&s(2)))]
        }
        TableId::Eq16 => vec![(o.c(&o.x(0), &o.p(0)), algebra.constant(Scalar::i()))],
        TableId::Eq17 => vec![(o.c(&o.z(Lo, 0), &o.z(Ra, 0)), o.int(1))],
        TableId::Eq18 => {
            let (x, p) = (o.x(0), o.p(0));
            vec![
                (o.c(&(&x * &x), &p), x.scale(&iq(2, 1))),
                (o.c(&(&p * &x), &p), p.scale(&Scalar::i())),
                (o.c(&(&x * &p), &p), p.scale(&Scalar::i())),
            ]
        }
        TableId::Eq19 => {
            let (x, p) = (o.x(0), o.p(0));
            vec![
                (o.c(&(&p * &p), &x), p.scale(&iq(-2, 1))),
                (o.c(&(&p * &x), &x), x.scale(&iq(-1, 1))),
                (o.c(&(&x * &p), &x), x.scale(&iq(-1, 1))),
            ]
        }
        TableId::Eq20 => {
            let (x, p) = (o.x(0), o.p(0));
            let (pp, xx, px) = (&p * &p, &x * &x, &p * &x);
            vec![
                (o.c(&pp, &xx), (&px + &(&x * &p)).scale(&iq(-2, 1))),
                (o.c(&pp, &px), pp.scale(&iq(-2, 1))),
                (o.c(&xx, &px), xx.scale(&iq(2, 1))),
            ]
        }
        TableId::Eq21 => {
            let (x, p) = (o.x(0), o.p(0));
            let (zm, zp) = (o.z(Lo, 0), o.z(Ra, 0));
            let quarter = q(1, 4);
            vec![
                (o.b(P, 0, 0), (&(&p * &p) + &(&x * &x)).scale(&quarter)),
                (o.b(P, 0, 0), (&(&zm * &zp) + &(&zp * &zm)).scale(&quarter)),
                // printed with a plus sign in the middle member
                (o.b(M, 0, 0), (&(&p * &p) + &(&x * &x)).scale(&quarter)),
                (o.b(M, 0, 0), (&(&zm * &zm) + &(&zp * &zp)).scale(&quarter)),
                (o.b(X, 0, 0), (&(&p * &x) + &(&x * &p)).scale(&quarter)),
                (o.b(X, 0, 0), (&(&zm * &zm) - &(&zp * &zp)).scale(&iq(1, 4))),
            ]
        }
        TableId::Eq22 => vec![
            (
                o.c(&o.b(P, 0, 0), &o.b(M, 0, 0)),
                o.b(X, 0, 0).scale(&Scalar::i()),
            ),
            (
                o.c(&o.b(M, 0, 0), &o.b(X, 0, 0)),
                o.b(P, 0, 0).scale(&iq(-1, 1)),
            ),
            (
                o.c(&o.b(X, 0, 0), &o.b(P, 0, 0)),
                o.b(M, 0, 0).scale(&Scalar::i()),
            ),
        ],
        TableId::Eq23 => {
            let (x, p) = (o.x(0), o.p(0));
            vec![
                (o.c(&o.b(P, 0, 0), &p), x.scale(&iq(1, 2))),
                (o.c(&o.b(M, 0, 0), &p), x.scale(&iq(-1, 2))),
                (o.c(&o.b(X, 0, 0), &p), p.scale(&iq(1, 2))),
            ]
        }
        TableId::Eq24 => {
            let (x, p) = (o.x(0), o.p(0));
            vec![
                (o.c(&o.b(P, 0, 0), &x), p.scale(&iq(-1, 2))),
                (o.c(&o.b(M, 0, 0), &x), p.scale(&iq(-1, 2))),
                (o.c(&o.b(X, 0, 0), &x), x.scale(&iq(-1, 2))),
            ]
        }
        TableId::Eq27 => {
            let j = reduced_dispersion(algebra, P, 0, 0).expect("index in range");
            let (zm, zp) = (o.z(Lo, 0), o.z(Ra, 0));
            vec![
                (j.clone(), &bsym * &(&(&zm * &zp) + &(&zp * &zm))),
                (j.clone(), &bsym * &(&(&zp * &zm).scale(&s(2)) + &o.int(1))),
                (j, &bsym * &(&(&zm * &zp).scale(&s(2)) - &o.int(1))),
            ]
        }
        TableId::Eq28 => {
            let j = displaced::dispersion(algebra, P);
            let zm = displaced::ladder(algebra, Lo);
            let zp = displaced::ladder(algebra, Ra);
            vec![
                (o.c(&j, &zm), (&bsym * &zm).scale(&s(-2))),
                (o.c(&j, &zp), (&bsym * &zp).scale(&s(2))),
            ]
        }
        TableId::Eq66 => {
            let (m, n) = (idx[0], idx[1]);
            let (zpm, zmm, zpn, zmn) = (o.z(Ra, m), o.z(Lo, m), o.z(Ra, n), o.z(Lo, n));
            let cross =
                &(&(&o.ac(&zpm, &zmn) - &o.ac(&zpm, &zpn)) + &o.ac(&zmm, &zmn)) - &o.ac(&zmm, &zpn);
            vec![
                (
                    o.b(P, m, n),
                    (&(&zpm * &zmn) + &(&zmm * &zpn)).scale(&q(1, 4)),
                ),
                (
                    o.b(M, m, n),
                    (&(&zpm * &zpn) + &(&zmm * &zmn)).scale(&q(1, 4)),
                ),
                (o.b(X, m, n), cross.scale(&iq(1, 8))),
            ]
        }
        TableId::Eq67 => {
            let (m, n) = (idx[0], idx[1]);
            vec![(
                o.c(&o.p(m), &o.x(n)),
                algebra.constant(&o.eta(m, n) * &Scalar::i()),
            )]
        }
        TableId::Eq68 => {
            let (m, n) = (idx[0], idx[1]);
            vec![(o.c(&o.z(Ra, m), &o.z(Lo, n)), algebra.constant(o.eta(m, n)))]
        }
        TableId::Eq69 => {
            let (m, n, r) = (idx[0], idx[1], idx[2]);
            let (xm, xn, pm, pn, pr) = (o.x(m), o.x(n), o.p(m), o.p(n), o.p(r));
            vec![
                (
                    o.c(&(&xm * &xn), &pr),
                    (&xm.scale(&o.eta(n, r)) - &xn.scale(&o.eta(m, r))).scale(&iq(-1, 1)),
                ),
                (
                    o.c(&(&pm * &xn), &pr),
                    pm.scale(&(&o.eta(n, r) * &iq(-1, 1))),
                ),
                (
                    o.c(&(&xm * &pn), &pr),
                    pn.scale(&(&o.eta(m, r) * &iq(-1, 1))),
                ),
            ]
        }
        TableId::Eq70 => {
            let (m, n, r) = (idx[0], idx[1], idx[2]);
            let (xm, xn, pm, pn, xr) = (o.x(m), o.x(n), o.p(m), o.p(n), o.x(r));
            vec![
                (
                    o.c(&(&pm * &pn), &xr),
                    (&pm.scale(&o.eta(n, r)) + &pn.scale(&o.eta(m, r))).scale(&Scalar::i()),
                ),
                (
                    o.c(&(&pm * &xn), &xr),
                    xn.scale(&(&o.eta(m, r) * &Scalar::i())),
                ),
                (
                    o.c(&(&xm * &pn), &xr),
                    xm.scale(&(&o.eta(n, r) * &Scalar::i())),
                ),
            ]
        }
        TableId::Eq71 => {
            let (m, n, r) = (idx[0], idx[1], idx[2]);
            let sym_x = &o.x(m).scale(&o.eta(n, r)) + &o.x(n).scale(&o.eta(m, r));
            vec![
                (o.c(&o.b(P, m, n), &o.p(r)), sym_x.scale(&iq(-1, 4))),
                (o.c(&o.b(M, m, n), &o.p(r)), sym_x.scale(&iq(1, 4))),
                (
                    o.c(&o.b(X, m, n), &o.p(r)),
                    o.p(m).scale(&(&o.eta(n, r) * &iq(-1, 2))),
                ),
            ]
        }
        TableId::Eq72 => {
            let (m, n, r) = (idx[0], idx[1], idx[2]);
            let sym_p = &o.p(m).scale(&o.eta(n, r)) + &o.p(n).scale(&o.eta(m, r));
            vec![
                (o.c(&o.b(P, m, n), &o.x(r)), sym_p.scale(&iq(1, 4))),
                (o.c(&o.b(M, m, n), &o.x(r)), sym_p.scale(&iq(1, 4))),
                (
                    o.c(&o.b(X, m, n), &o.x(r)),
                    o.x(n).scale(&(&o.eta(m, r) * &iq(1, 2))),
                ),
            ]
        }
        TableId::Eq73 => {
            let (m, n, r, l) = (idx[0], idx[1], idx[2], idx[3]);
            let (x, p) = (|i| o.x(i), |i| o.p(i));
            let e = |a, b| o.eta(a, b);
            let t = |c: Scalar, a: WeylPolynomial, b: WeylPolynomial| (&a * &b).scale(&c);
            let i = Scalar::i;
            let sum = |v: Vec<WeylPolynomial>| v.into_iter().fold(algebra.zero(), |a, b| &a + &b);
            vec![
                (
                    o.c(&(&p(m) * &p(n)), &(&x(r) * &x(l))),
                    sum(vec![
                        t(e(l, n), p(m), x(r)),
                        t(e(r, n), p(m), x(l)),
                        t(e(l, m), x(r), p(n)),
                        t(e(r, m), x(l), p(n)),
                    ])
                    .scale(&i()),
                ),
                (
                    o.c(&(&p(m) * &p(n)), &(&p(r) * &x(l))),
                    sum(vec![t(e(l, n), p(m), p(r)), t(e(l, m), p(r), p(n))]).scale(&i()),
                ),
                (
                    o.c(&(&p(m) * &p(n)), &(&x(r) * &p(l))),
                    sum(vec![t(e(r, n), p(m), p(l)), t(e(r, m), p(l), p(n))]).scale(&i()),
                ),
                (
                    o.c(&(&x(m) * &x(n)), &(&p(r) * &x(l))),
                    sum(vec![t(e(r, n), x(m), x(l)), t(-e(r, m), x(l), x(n))]).scale(&iq(-1, 1)),
                ),
                (
                    o.c(&(&x(m) * &x(n)), &(&x(r) * &p(l))),
                    sum(vec![t(e(l, n), x(m), x(r)), t(-e(l, m), x(r), x(n))]).scale(&iq(-1, 1)),
                ),
                (
                    o.c(&(&p(m) * &x(n)), &(&p(r) * &x(l))),
                    sum(vec![t(e(r, n), p(m), x(l)), t(e(l, m), p(r), x(n))]).scale(&iq(-1, 1)),
                ),
                (
                    o.c(&(&p(m) * &x(n)), &(&x(r) * &p(l))),
                    sum(vec![t(e(l, n), p(m), x(r)), t(e(r, m), p(l), x(n))]).scale(&iq(-1, 1)),
                ),
                (
                    o.c(&(&x(m) * &p(n)), &(&x(r) * &p(l))),
                    sum(vec![t(e(r, n), x(m), p(l)), t(-e(l, m), x(r), p(n))]).scale(&i()),
                ),
            ]
        }
        TableId::Eq74 => {
            let (m, n, r, l) = (idx[0], idx[1], idx[2], idx[3]);
            let anti = |a, b| &o.b(X, a, b) - &o.b(X, b, a);
            let bracket = &(&(&anti(m, r).scale(&o.eta(n, l)) + &anti(m, l).scale(&o.eta(n, r)))
                + &anti(n, r).scale(&o.eta(m, l)))
                + &anti(n, l).scale(&o.eta(m, r));
            vec![
                (o.c(&o.b(P, m, n), &o.b(P, r, l)), bracket.scale(&iq(1, 8))),
                (o.c(&o.b(M, m, n), &o.b(M, r, l)), bracket.scale(&iq(-1, 8))),
                (
                    o.c(&o.b(X, m, n), &o.b(X, r, l)),
                    (&o.b(X, r, l).scale(&o.eta(n, m)) - &o.b(X, m, n).scale(&o.eta(r, l)))
                        .scale(&iq(1, 2)),
                ),
            ]
        }
        TableId::Eq75 => {
            let (m, n, r, l) = (idx[0], idx[1], idx[2], idx[3]);
            let sym = |a, b| &o.b(X, a, b) + &o.b(X, b, a);
            let line1 = &(&(&sym(m, r).scale(&o.eta(n, l)) + &sym(m, l).scale(&o.eta(n, r)))
                + &sym(n, r).scale(&o.eta(m, l)))
                + &sym(n, l).scale(&o.eta(m, r));
            // (𝖇⁺_{ab} ± 𝖇⁻_{cd})
            let pm = |a, b, c, d, sign: i64| &o.b(P, a, b) + &o.b(M, c, d).scale(&s(sign));
            let line2 = &(&(&pm(m, r, r, m, 1).scale(&o.eta(l, n))
                + &pm(r, n, n, r, 1).scale(&o.eta(l, m)))
                + &pm(m, l, l, m, -1).scale(&o.eta(r, n)))
                + &pm(l, n, n, l, -1).scale(&o.eta(r, m));
            let line3 = &(&(&pm(m, r, r, m, 1).scale(&o.eta(n, l))
                + &pm(m, l, l, m, 1).scale(&o.eta(n, r)))
                - &pm(r, n, n, r, -1).scale(&o.eta(m, l)))
                - &pm(n, l, l, n, -1).scale(&o.eta(m, r));
            vec![
                (o.c(&o.b(P, m, n), &o.b(M, r, l)), line1.scale(&iq(1, 8))),
                (o.c(&o.b(M, m, n), &o.b(X, r, l)), line2.scale(&iq(1, 4))),
                (o.c(&o.b(X, m, n), &o.b(P, r, l)), line3.scale(&iq(-1, 4))),
            ]
        }
    }
}
