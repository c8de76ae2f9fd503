//! Modal correspondence for unary operators.
//!
//! The operator side evaluates (in)equations over all lattice elements. The
//! relation side reads first-order conditions off the dual relation `R`,
//! where `c R p <=> c <= h(↓p)`. Rows of `R` are upsets, so conditions that
//! mention an intermediate point are order-enriched: the point may be chosen
//! below the one named in the naive condition.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{CoreError, Result};
use crate::operator::{dualize_operator, DualRelation, Operator};
use crate::order::{DownSet, OrderRelation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModalProperty {
    Reflexive,
    Symmetric,
    Euclidean,
    Transitive,
    Total,
    Empty,
    Quantifier,
}

impl ModalProperty {
    pub const ALL: [ModalProperty; 7] = [
        ModalProperty::Reflexive,
        ModalProperty::Symmetric,
        ModalProperty::Euclidean,
        ModalProperty::Transitive,
        ModalProperty::Total,
        ModalProperty::Empty,
        ModalProperty::Quantifier,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModalProperty::Reflexive => "reflexive",
            ModalProperty::Symmetric => "symmetric",
            ModalProperty::Euclidean => "euclidean",
            ModalProperty::Transitive => "transitive",
            ModalProperty::Total => "total",
            ModalProperty::Empty => "empty",
            ModalProperty::Quantifier => "quantifier",
        }
    }
}

impl fmt::Display for ModalProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModalProperty {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        ModalProperty::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| CoreError::Unknown { what: "modal property", name: s.into() })
    }
}

fn require_unary(k: usize, n: usize) -> Result<()> {
    if k != 1 {
        return Err(CoreError::ArityMismatch { expected: 1, found: k });
    }
    if n != 1 {
        return Err(CoreError::ArityMismatch { expected: 1, found: n });
    }
    Ok(())
}

/// `h` tabulated on element indices.
struct Tab {
    h: Vec<usize>,
    meet: Vec<usize>,
    n: usize,
    leq: Vec<bool>,
    bot: usize,
    top: usize,
}

impl Tab {
    fn new(op: &Operator) -> Result<Tab> {
        let d = op.lattice();
        let els = d.elements()?;
        let n = els.len();
        let idx = |x: &DownSet| d.index_of(x).expect("element of the lattice");
        let h = els.iter().map(|x| idx(&op.apply(x))).collect();
        let mut meet = Vec::with_capacity(n * n);
        let mut leq = Vec::with_capacity(n * n);
        for a in els {
            for b in els {
                meet.push(idx(&a.intersection(b)));
                leq.push(a.is_subset(b));
            }
        }
        Ok(Tab { h, meet, n, leq, bot: 0, top: n - 1 })
    }

    fn m(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    fn all2(&self, f: impl Fn(usize, usize) -> bool) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| f(a, b)))
    }
}

/// Evaluates the algebraic condition for `p` on a unary operator.
pub fn operator_side(h: &Operator, p: ModalProperty) -> Result<bool> {
    require_unary(h.k(), h.n())?;
    let t = Tab::new(h)?;
    Ok(op_holds(&t, p))
}

fn op_holds(t: &Tab, p: ModalProperty) -> bool {
    let h = &t.h;
    match p {
        ModalProperty::Reflexive => (0..t.n).all(|a| t.le(a, h[a])),
        ModalProperty::Symmetric => t.all2(|a, b| t.le(t.m(a, h[b]), h[t.m(h[a], b)])),
        ModalProperty::Euclidean => t.all2(|a, b| t.le(t.m(h[a], h[b]), h[t.m(a, h[b])])),
        ModalProperty::Transitive => t.all2(|a, b| t.le(h[t.m(a, h[b])], t.m(h[a], h[b]))),
        ModalProperty::Total => h[t.top] == t.top,
        ModalProperty::Empty => h[t.top] == t.bot,
        ModalProperty::Quantifier => {
            op_holds(t, ModalProperty::Reflexive)
                && op_holds(t, ModalProperty::Euclidean)
                && op_holds(t, ModalProperty::Total)
        }
    }
}

/// Evaluates the first-order condition for `p` on a unary dual relation.
pub fn relation_side(r: &DualRelation, p: ModalProperty) -> Result<bool> {
    require_unary(r.k(), r.n())?;
    Ok(rel_holds(r.relation(), p))
}

fn rel_holds(r: &OrderRelation, p: ModalProperty) -> bool {
    let n = r.dom().len();
    let po = r.dom();
    match p {
        ModalProperty::Reflexive => (0..n).all(|x| r.contains(x, x)),
        // x R y => some v <= y with x R v and v R x
        ModalProperty::Symmetric => (0..n).all(|x| {
            r.image(x).iter().all(|y| po.down(y).iter().any(|v| r.contains(x, v) && r.contains(v, x)))
        }),
        // x R y and x R z => some v <= y with x R v and v R z
        ModalProperty::Euclidean => (0..n).all(|x| {
            r.image(x).iter().all(|y| {
                r.image(x).iter().all(|z| po.down(y).iter().any(|v| r.contains(x, v) && r.contains(v, z)))
            })
        }),
        ModalProperty::Transitive => {
            (0..n).all(|x| r.image(x).iter().all(|y| r.image(y).is_subset(r.image(x))))
        }
        ModalProperty::Total => r.is_total(),
        ModalProperty::Empty => r.is_empty(),
        ModalProperty::Quantifier => {
            rel_holds(r, ModalProperty::Reflexive) && rel_holds(r, ModalProperty::Euclidean) && r.is_total()
        }
    }
}

/// Reflexive, symmetric and transitive (symmetry in the order-enriched form).
///
/// On a discrete base this coincides with the quantifier condition. On
/// ordered bases it is strictly stronger: the operator on the three-element
/// V poset sending the bottom prime to `↓{0,1}` and the others to `⊤`
/// satisfies the quantifier inequations but its dual is not transitive.
pub fn relation_is_equivalence(r: &DualRelation) -> Result<bool> {
    require_unary(r.k(), r.n())?;
    let r = r.relation();
    Ok(rel_holds(r, ModalProperty::Reflexive)
        && rel_holds(r, ModalProperty::Symmetric)
        && rel_holds(r, ModalProperty::Transitive))
}

/// Both verdicts for one property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub property: ModalProperty,
    pub operator_side: bool,
    pub relation_side: bool,
}

/// Computes both sides; a mismatch is an error carrying the operator table.
pub fn check_correspondence(h: &Operator, p: ModalProperty) -> Result<Correspondence> {
    let c = Correspondence {
        property: p,
        operator_side: operator_side(h, p)?,
        relation_side: relation_side(&dualize_operator(h), p)?,
    };
    if c.operator_side != c.relation_side {
        return Err(CoreError::Disagreement {
            what: "modal correspondence",
            detail: format!(
                "{p}: operator side {}, relation side {}, table {:?}",
                c.operator_side,
                c.relation_side,
                h.table()
            ),
        });
    }
    Ok(c)
}

/// All seven properties at once, tabulating the operator a single time.
pub fn check_all(h: &Operator) -> Result<Vec<Correspondence>> {
    require_unary(h.k(), h.n())?;
    let t = Tab::new(h)?;
    let r = dualize_operator(h);
    let mut out = Vec::with_capacity(ModalProperty::ALL.len());
    for p in ModalProperty::ALL {
        let c = Correspondence { property: p, operator_side: op_holds(&t, p), relation_side: rel_holds(r.relation(), p) };
        if c.operator_side != c.relation_side {
            return Err(CoreError::Disagreement {
                what: "modal correspondence",
                detail: format!("{p}: operator side {}, table {:?}", c.operator_side, h.table()),
            });
        }
        out.push(c);
    }
    Ok(out)
}
