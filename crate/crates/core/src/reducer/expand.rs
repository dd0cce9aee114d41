//! Replacing each `PowerLink` atom by polynomial equations over K.
//!
//! `(x, y)` is linked when, for `W = t^(2^s)`,
//! `v = (y^2 + W^2 + W)/(y^2 + W)` is a 2-power of
//! `u = (x^2 + t^2 + t)/(x^2 + t)` and the same holds with `t -> 1/t`.
//! Each "is a 2-power" statement is a choice between a certificate block and
//! a square root followed by a certificate block; the choice is written as a
//! finite disjunction of equation lists. Inverses get their own variables
//! `X * Xi = 1`, so every equation is polynomial in the variables.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::check::{atom_holds, KAssignment};
use super::compile::{atom_text, KAtom, KSystem};
use crate::algebra::{inverted_constant_set, FieldElem, FieldSpec, RatFunc};
use crate::certificates::s1::build_s1_certificate_over;
use crate::certificates::t1::{build_t1_certificate_over, SIGNS};
use crate::certificates::{check_power_relation, compute_u_over, Base, SCertificate, TCertificate};
use crate::expr;

pub type VarId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(VarId),
    Const(RatFunc),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    Eq(Expr, Expr),
    /// At least one list of constraints holds.
    AnyOf(Vec<Vec<Constraint>>),
    /// An atom of the original system kept as is.
    Atom(KAtom),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedSystem {
    pub field: FieldSpec,
    /// The variables of the original system first, then witnesses.
    pub variables: Vec<String>,
    pub primary: usize,
    pub constraints: Vec<Constraint>,
}

/// Values for an [`ExpandedSystem`]; witnesses of branches not taken stay
/// unassigned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExAssignment {
    pub values: Vec<Option<RatFunc>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpandError {
    /// The assignment does not satisfy the atom, so there is nothing to
    /// extend.
    Unsatisfied(usize),
}

impl core::fmt::Display for ExpandError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ExpandError::Unsatisfied(i) => write!(f, "atom {i} does not hold"),
        }
    }
}

impl core::error::Error for ExpandError {}

fn cst(r: RatFunc) -> Expr {
    Expr::Const(r)
}

fn fe(c: FieldElem) -> Expr {
    Expr::Const(RatFunc::constant(c))
}

fn pow(e: &Expr, k: u32) -> Expr {
    Expr::Pow(Box::new(e.clone()), k)
}

fn sum(items: Vec<Expr>) -> Expr {
    Expr::Sum(items)
}

fn prod(items: Vec<Expr>) -> Expr {
    Expr::Prod(items)
}

/// `z^4 + z`.
fn as4(z: &Expr) -> Expr {
    sum(vec![pow(z, 4), z.clone()])
}

struct Builder {
    field: FieldSpec,
    names: Vec<String>,
    values: Vec<Option<RatFunc>>,
}

impl Builder {
    fn fresh(&mut self, name: String, value: Option<RatFunc>) -> Expr {
        self.names.push(name);
        self.values.push(value);
        Expr::Var(self.names.len() - 1)
    }

    /// A variable `xi` with `x * xi = 1`.
    fn inverse(&mut self, name: String, x: &Expr, value: Option<&RatFunc>, out: &mut Vec<Constraint>) -> Expr {
        let xi = self.fresh(name, value.map(|v| v.inv().expect("nonzero")));
        out.push(Constraint::Eq(prod(vec![x.clone(), xi.clone()]), cst(RatFunc::one(self.field))));
        xi
    }

    /// A variable `d` with `prod over e in orbit(c) of (d + e) = 0`.
    fn orbit_var(&mut self, name: String, c: FieldElem, value: Option<FieldElem>, out: &mut Vec<Constraint>) -> Expr {
        let d = self.fresh(name, value.map(RatFunc::constant));
        let factors = c.frobenius_orbit().into_iter().map(|e| sum(vec![d.clone(), fe(e)])).collect();
        out.push(Constraint::Eq(prod(factors), cst(RatFunc::zero(self.field))));
        d
    }

    /// A variable `q` with `q * (a + k') = a + k`, i.e. `q = (a + k)/(a + k')`.
    fn ratio(&mut self, name: String, a: &Expr, k: &Expr, k_prime: &Expr, value: Option<RatFunc>, out: &mut Vec<Constraint>) -> Expr {
        let q = self.fresh(name, value);
        out.push(Constraint::Eq(
            prod(vec![q.clone(), sum(vec![a.clone(), k_prime.clone()])]),
            sum(vec![a.clone(), k.clone()]),
        ));
        q
    }

    /// Equations saying `w = b^(4^k)` for some `k`.
    fn s1_block(
        &mut self,
        pre: &str,
        w: &Expr,
        base: Base,
        v_set: &[FieldElem],
        cert: Option<&SCertificate>,
    ) -> Vec<Constraint> {
        let mut out = Vec::new();
        let b = base.value(self.field);
        let b_inv = b.inv().expect("nonzero");
        let w_val = cert.map(|c| &c.w);
        let wi = self.inverse(format!("{pre}.wi"), w, w_val, &mut out);
        let u = self.fresh(format!("{pre}.u"), cert.map(|c| c.u.clone()));
        let v = self.fresh(format!("{pre}.v"), cert.map(|c| c.v.clone()));
        out.push(Constraint::Eq(sum(vec![w.clone(), cst(b.clone())]), as4(&u)));
        out.push(Constraint::Eq(sum(vec![wi, cst(b_inv)]), as4(&v)));
        let entry = |i: usize, j: usize| cert.map(|c| &c.family[i * v_set.len() + j]);
        let ds: Vec<Expr> = (0..v_set.len())
            .map(|i| self.orbit_var(format!("{pre}.d[{i}]"), v_set[i], entry(i, 0).map(|e| e.d), &mut out))
            .collect();
        for (i, &c) in v_set.iter().enumerate() {
            for (j, &c_prime) in v_set.iter().enumerate() {
                let en = entry(i, j);
                let dp = self.orbit_var(format!("{pre}.d[{i},{j}]"), c_prime, en.map(|e| e.d_prime), &mut out);
                let wdd_val = en.zip(w_val).map(|(e, wv)| {
                    &(wv + &RatFunc::constant(e.d)) / &(wv + &RatFunc::constant(e.d_prime))
                });
                let wdd = self.ratio(format!("{pre}.wdd[{i},{j}]"), w, &ds[i], &dp, wdd_val.clone(), &mut out);
                let wddi = self.inverse(format!("{pre}.wddi[{i},{j}]"), &wdd, wdd_val.as_ref(), &mut out);
                let udd = self.fresh(format!("{pre}.udd[{i},{j}]"), en.map(|e| e.u.clone()));
                let vdd = self.fresh(format!("{pre}.vdd[{i},{j}]"), en.map(|e| e.v.clone()));
                let tcc = &(&b + &RatFunc::constant(c)) / &(&b + &RatFunc::constant(c_prime));
                let tcc_inv = tcc.inv().expect("nonzero");
                out.push(Constraint::Eq(sum(vec![wdd, cst(tcc)]), as4(&udd)));
                out.push(Constraint::Eq(sum(vec![wddi, cst(tcc_inv)]), as4(&vdd)));
            }
        }
        out
    }

    /// Equations saying `v = u^(4^k)` for some `k`, where `u` is already
    /// tied to `x` over the base `b`.
    fn t1_block(
        &mut self,
        pre: &str,
        u: &Expr,
        v: &Expr,
        base: Base,
        v_set: &[FieldElem],
        wit: Option<(&RatFunc, &TCertificate)>,
    ) -> Vec<Constraint> {
        let mut out = Vec::new();
        let b = base.value(self.field);
        let s_cert = wit.map(|(_, c)| build_s1_certificate_over(self.field, base, c.s, v_set));
        let q = self.fresh(format!("{pre}.q"), s_cert.as_ref().map(|c| c.w.clone()));
        out.extend(self.s1_block(&format!("{pre}.q"), &q, base, v_set, s_cert.as_ref()));
        let u_val = wit.map(|(u, _)| u.clone());
        let v_val = wit.map(|(_, c)| c.v.clone());
        let ui = self.inverse(format!("{pre}.ui"), u, u_val.as_ref(), &mut out);
        let vi = self.inverse(format!("{pre}.vi"), v, v_val.as_ref(), &mut out);
        let sign = |g: i8| if g == 1 { "+" } else { "-" };
        let pick = |g: i8, a: &Expr, ai: &Expr| if g == 1 { a.clone() } else { ai.clone() };
        let pick_val = |g: i8, a: &Option<RatFunc>| a.as_ref().map(|x| x.powi(g as i64).expect("nonzero"));
        let entry = |i: usize, j: usize, e: i8, g: i8| {
            wit.and_then(|(_, c)| {
                c.entries.iter().find(|en| {
                    en.c == v_set[i] && en.c_prime == v_set[j] && en.e == e && en.g == g
                })
            })
        };
        let ds: Vec<Expr> = (0..v_set.len())
            .map(|i| self.orbit_var(format!("{pre}.d[{i}]"), v_set[i], entry(i, 0, 1, 1).map(|e| e.d), &mut out))
            .collect();
        for (i, &c) in v_set.iter().enumerate() {
            for (j, &c_prime) in v_set.iter().enumerate() {
                let dp_val = entry(i, j, 1, 1).map(|e| e.d_prime);
                let dp = self.orbit_var(format!("{pre}.d[{i},{j}]"), c_prime, dp_val, &mut out);
                for g in SIGNS {
                    let ug = pick(g, u, &ui);
                    let vg = pick(g, v, &vi);
                    let ug_val = pick_val(g, &u_val);
                    let vg_val = pick_val(g, &v_val);
                    let ucg_val = ug_val.as_ref().map(|x| &(x + &RatFunc::constant(c)) / &(x + &RatFunc::constant(c_prime)));
                    let vdg_val = vg_val.as_ref().zip(entry(i, j, 1, g)).map(|(x, en)| {
                        &(x + &RatFunc::constant(en.d)) / &(x + &RatFunc::constant(en.d_prime))
                    });
                    let tag = format!("{i},{j},{}", sign(g));
                    let ucg = self.ratio(format!("{pre}.ucg[{tag}]"), &ug, &fe(c), &fe(c_prime), ucg_val.clone(), &mut out);
                    let ucgi = self.inverse(format!("{pre}.ucgi[{tag}]"), &ucg, ucg_val.as_ref(), &mut out);
                    let vdg = self.ratio(format!("{pre}.vdg[{tag}]"), &vg, &ds[i], &dp, vdg_val.clone(), &mut out);
                    let vdgi = self.inverse(format!("{pre}.vdgi[{tag}]"), &vdg, vdg_val.as_ref(), &mut out);
                    for e in SIGNS {
                        let en = entry(i, j, e, g);
                        let tag = format!("{i},{j},{},{}", sign(e), sign(g));
                        let sigma = self.fresh(format!("{pre}.sigma[{tag}]"), en.map(|x| x.sigma.clone()));
                        let lambda = self.fresh(format!("{pre}.lambda[{tag}]"), en.map(|x| x.lambda.clone()));
                        let ue = pick(e, &ucg, &ucgi);
                        let ve = pick(e, &vdg, &vdgi);
                        out.push(Constraint::Eq(sum(vec![ve.clone(), ue.clone()]), as4(&sigma)));
                        out.push(Constraint::Eq(
                            sum(vec![prod(vec![pow(&ve, 2), q.clone()]), prod(vec![pow(&ue, 2), cst(b.clone())])]),
                            as4(&lambda),
                        ));
                    }
                }
            }
        }
        for (i, &c) in v_set.iter().enumerate() {
            for g in SIGNS {
                let ug = pick(g, u, &ui);
                let vg = pick(g, v, &vi);
                let p_val = pick_val(g, &u_val).map(|x| &x + &RatFunc::constant(c));
                let d_val = entry(i, 0, 1, 1).map(|en| RatFunc::constant(en.d));
                let r_val = pick_val(g, &v_val).zip(d_val).map(|(x, d)| &x + &d);
                let p = sum(vec![ug, fe(c)]);
                let r = sum(vec![vg, ds[i].clone()]);
                let pi = self.inverse(format!("{pre}.pi[{i},{}]", sign(g)), &p, p_val.as_ref(), &mut out);
                let ri = self.inverse(format!("{pre}.ri[{i},{}]", sign(g)), &r, r_val.as_ref(), &mut out);
                for e in SIGNS {
                    let mu_val = wit.and_then(|(_, cert)| {
                        cert.mu.iter().find(|m| m.c == c && m.e == e && m.g == g).map(|m| m.mu.clone())
                    });
                    let mu = self.fresh(format!("{pre}.mu[{i},{},{}]", sign(e), sign(g)), mu_val);
                    let lhs = sum(vec![pick(e, &p, &pi), pick(e, &r, &ri)]);
                    out.push(Constraint::Eq(lhs, as4(&mu)));
                }
            }
        }
        out
    }
}

/// Witness data for one `PowerLink`, present when extending an assignment.
struct LinkWitness {
    s: u32,
    r: u32,
    j: u32,
    x: RatFunc,
}

fn expand_link(
    bld: &mut Builder,
    idx: usize,
    x: VarId,
    y: VarId,
    v_set: &[FieldElem],
    wit: Option<&LinkWitness>,
) -> Vec<Constraint> {
    let f = bld.field;
    let pre = format!("p{idx}");
    let mut out = Vec::new();
    let t = RatFunc::t(f);
    let ti = t.inv().expect("nonzero");
    let (xe, ye) = (Expr::Var(x), Expr::Var(y));
    let big_w_val = wit.map(|w| t.frobenius_pow(w.s));
    let big_w = bld.fresh(format!("{pre}.W"), big_w_val.clone());
    let big_wi = bld.inverse(format!("{pre}.Wi"), &big_w, big_w_val.as_ref(), &mut out);

    let u_val = wit.map(|w| compute_u_over(&w.x, Base::T).expect("x^2 + t is never zero"));
    let ut_val = wit.map(|w| compute_u_over(&w.x, Base::InvT).expect("x^2 + 1/t is never zero"));
    let v_val = u_val.as_ref().zip(wit).map(|(u, w)| u.frobenius_pow(w.r));
    let vt_val = ut_val.as_ref().zip(wit).map(|(u, w)| u.frobenius_pow(w.j));
    let x2 = pow(&xe, 2);
    let y2 = pow(&ye, 2);
    let u = bld.fresh(format!("{pre}.u"), u_val.clone());
    let ut = bld.fresh(format!("{pre}.ut"), ut_val.clone());
    let v = bld.fresh(format!("{pre}.v"), v_val.clone());
    let vt = bld.fresh(format!("{pre}.vt"), vt_val.clone());
    let frac = |lhs: &Expr, sq: &Expr, b: Expr| {
        Constraint::Eq(
            prod(vec![lhs.clone(), sum(vec![sq.clone(), b.clone()])]),
            sum(vec![sq.clone(), pow(&b, 2), b]),
        )
    };
    out.push(frac(&u, &x2, cst(t.clone())));
    out.push(frac(&ut, &x2, cst(ti.clone())));
    out.push(frac(&v, &y2, big_w.clone()));
    out.push(frac(&vt, &y2, big_wi.clone()));

    // W = t^(4^k) or W = Z^2 with Z = t^(4^k)
    let s_branch = wit.map(|w| w.s % 2);
    let s_direct = (s_branch == Some(0))
        .then(|| build_s1_certificate_over(f, Base::T, wit.unwrap().s / 2, v_set));
    let a = bld.s1_block(&format!("{pre}.S"), &big_w, Base::T, v_set, s_direct.as_ref());
    let s_root = (s_branch == Some(1))
        .then(|| build_s1_certificate_over(f, Base::T, (wit.unwrap().s - 1) / 2, v_set));
    let z = bld.fresh(format!("{pre}.Sz"), s_root.as_ref().map(|c| c.w.clone()));
    let mut b = vec![Constraint::Eq(big_w.clone(), pow(&z, 2))];
    b.extend(bld.s1_block(&format!("{pre}.Sz"), &z, Base::T, v_set, s_root.as_ref()));
    out.push(Constraint::AnyOf(vec![a, b]));

    // v = u^(2^r) and vt = ut^(2^j), each split by the parity of the exponent
    let inv_set = inverted_constant_set(v_set);
    let parts = [
        ("T", &u, &v, Base::T, v_set, wit.map(|w| w.r)),
        ("R", &ut, &vt, Base::InvT, &inv_set[..], wit.map(|w| w.j)),
    ];
    for (tag, ue, ve, base, set, exp) in parts {
        let cert = |k: u32| {
            let w = wit.unwrap();
            build_t1_certificate_over(&w.x, base, k, set).expect("x^2 + b is never zero")
        };
        let u_here = if base == Base::T { u_val.as_ref() } else { ut_val.as_ref() };
        let direct = (exp.map(|r| r % 2) == Some(0)).then(|| cert(exp.unwrap() / 2));
        let a = bld.t1_block(&format!("{pre}.{tag}"), ue, ve, base, set, u_here.zip(direct.as_ref()));
        let root = (exp.map(|r| r % 2) == Some(1)).then(|| cert((exp.unwrap() - 1) / 2));
        let z = bld.fresh(format!("{pre}.{tag}z"), root.as_ref().map(|c| c.v.clone()));
        let mut b = vec![Constraint::Eq(ve.clone(), pow(&z, 2))];
        b.extend(bld.t1_block(&format!("{pre}.{tag}z"), ue, &z, base, set, u_here.zip(root.as_ref())));
        out.push(Constraint::AnyOf(vec![a, b]));
    }
    out
}

fn run(
    ks: &KSystem,
    field: FieldSpec,
    v_set: &[FieldElem],
    ka: Option<&KAssignment>,
) -> Result<(ExpandedSystem, Vec<Option<RatFunc>>), ExpandError> {
    let mut bld = Builder {
        field,
        names: ks.variables.clone(),
        values: match ka {
            Some(a) => a.values.iter().cloned().map(Some).collect(),
            None => vec![None; ks.variables.len()],
        },
    };
    let mut constraints = Vec::new();
    let mut links = 0;
    for (i, atom) in ks.atoms.iter().enumerate() {
        match *atom {
            KAtom::MulEq(a, b, c) => constraints.push(Constraint::Eq(
                Expr::Var(c),
                prod(vec![Expr::Var(a), Expr::Var(b)]),
            )),
            KAtom::PowerLink { x, w } => {
                links += 1;
                let wit = match ka {
                    None => None,
                    Some(a) => {
                        let (xv, yv) = (&a.values[x], &a.values[w]);
                        let rel = check_power_relation(xv, yv)
                            .ok()
                            .flatten()
                            .ok_or(ExpandError::Unsatisfied(i))?;
                        Some(LinkWitness { s: rel.s, r: rel.r, j: rel.j, x: xv.clone() })
                    }
                };
                constraints.extend(expand_link(&mut bld, links, x, w, v_set, wit.as_ref()));
            }
            other => constraints.push(Constraint::Atom(other)),
        }
    }
    let ex = ExpandedSystem { field, variables: bld.names, primary: ks.variables.len(), constraints };
    Ok((ex, bld.values))
}

/// The purely equational form of `ks`; atoms other than `MulEq` and
/// `PowerLink` are kept.
pub fn expand(ks: &KSystem, field: FieldSpec, v_set: &[FieldElem]) -> ExpandedSystem {
    run(ks, field, v_set, None).expect("no assignment to check").0
}

/// Extends a satisfying assignment of `ks` with certificate witnesses for
/// every variable of `expand(ks, ..)`.
pub fn extend_assignment(
    ks: &KSystem,
    ka: &KAssignment,
    field: FieldSpec,
    v_set: &[FieldElem],
) -> Result<ExAssignment, ExpandError> {
    let (_, values) = run(ks, field, v_set, Some(ka))?;
    Ok(ExAssignment { values })
}

pub fn eval(e: &Expr, values: &[Option<RatFunc>], field: FieldSpec) -> Option<RatFunc> {
    Some(match e {
        Expr::Var(i) => values.get(*i)?.clone()?,
        Expr::Const(c) => c.clone(),
        Expr::Sum(items) => {
            let mut acc = RatFunc::zero(field);
            for it in items {
                acc += &eval(it, values, field)?;
            }
            acc
        }
        Expr::Prod(items) => {
            let mut acc = RatFunc::one(field);
            for it in items {
                acc = &acc * &eval(it, values, field)?;
            }
            acc
        }
        Expr::Pow(base, k) => eval(base, values, field)?.pow(*k as u64),
    })
}

impl ExpandedSystem {
    fn holds(&self, c: &Constraint, values: &[Option<RatFunc>]) -> bool {
        match c {
            Constraint::Eq(l, r) => match (eval(l, values, self.field), eval(r, values, self.field)) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            },
            Constraint::AnyOf(branches) => {
                branches.iter().any(|br| br.iter().all(|c| self.holds(c, values)))
            }
            Constraint::Atom(atom) => {
                let Some(prim): Option<Vec<RatFunc>> = values[..self.primary].iter().cloned().collect() else {
                    return false;
                };
                atom_holds(atom, &prim)
            }
        }
    }

    /// Index of the first top-level constraint that fails.
    pub fn first_failure(&self, asg: &ExAssignment) -> Option<usize> {
        self.constraints.iter().position(|c| !self.holds(c, &asg.values))
    }

    pub fn check(&self, asg: &ExAssignment) -> bool {
        self.first_failure(asg).is_none()
    }

    pub fn var_index(&self, name: &str) -> Option<VarId> {
        self.variables.iter().position(|v| v == name)
    }

    /// Number of equations, counting those inside every branch.
    pub fn equation_count(&self) -> usize {
        fn count(cs: &[Constraint]) -> usize {
            cs.iter()
                .map(|c| match c {
                    Constraint::Eq(..) => 1,
                    Constraint::AnyOf(bs) => bs.iter().map(|b| count(b)).sum(),
                    Constraint::Atom(_) => 0,
                })
                .sum()
        }
        count(&self.constraints)
    }

    pub fn expr_to_string(&self, e: &Expr) -> String {
        match e {
            Expr::Var(i) => self.variables[*i].clone(),
            Expr::Const(c) => {
                let s = expr::to_string(c);
                if s.contains(' ') || s.contains('/') {
                    format!("({s})")
                } else {
                    s
                }
            }
            Expr::Sum(items) => {
                items.iter().map(|x| self.expr_to_string(x)).collect::<Vec<_>>().join(" + ")
            }
            Expr::Prod(items) => items
                .iter()
                .map(|x| match x {
                    Expr::Sum(_) => format!("({})", self.expr_to_string(x)),
                    _ => self.expr_to_string(x),
                })
                .collect::<Vec<_>>()
                .join(" * "),
            Expr::Pow(b, k) => match **b {
                Expr::Var(_) | Expr::Const(_) => format!("{}^{k}", self.expr_to_string(b)),
                _ => format!("({})^{k}", self.expr_to_string(b)),
            },
        }
    }

    fn write_constraints(&self, out: &mut String, cs: &[Constraint], indent: usize) {
        let pad = " ".repeat(indent);
        for c in cs {
            match c {
                Constraint::Eq(l, r) => {
                    out.push_str(&format!("{pad}{} = {}\n", self.expr_to_string(l), self.expr_to_string(r)));
                }
                Constraint::Atom(a) => {
                    out.push_str(&format!("{pad}{}\n", atom_text(a, &self.variables)));
                }
                Constraint::AnyOf(bs) => {
                    out.push_str(&format!("{pad}any of:\n"));
                    for (i, b) in bs.iter().enumerate() {
                        out.push_str(&format!("{pad}  branch {}:\n", i + 1));
                        self.write_constraints(out, b, indent + 4);
                    }
                }
            }
        }
    }

    /// One constraint per line, branches indented.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_constraints(&mut out, &self.constraints, 0);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_constant_set_v;
    use crate::expr::parse;
    use crate::reducer::{compile, embed, parse_nsystem, solve_nat};

    fn f() -> FieldSpec {
        FieldSpec::gf256()
    }

    #[test]
    fn no_power_link_is_unchanged() {
        let ks = compile(&parse_nsystem("c = a + b; a = 2").unwrap());
        let v = make_constant_set_v(f(), 2).unwrap();
        let ex = expand(&ks, f(), &v);
        assert_eq!(ex.variables, ks.variables);
        assert_eq!(ex.constraints.len(), ks.atoms.len());
        assert_eq!(ex.constraints[3], Constraint::Eq(Expr::Var(0), prod(vec![Expr::Var(1), Expr::Var(2)])));
        assert_eq!(ex.constraints[4], Constraint::Atom(KAtom::OrdConst(1, 2)));
    }

    #[test]
    fn power_link_of_t_and_t4_carries_s1_witnesses() {
        let ks = KSystem {
            variables: vec!["x".into(), "y".into()],
            atoms: vec![KAtom::PowerLink { x: 0, w: 1 }],
            origin: vec![None],
            primary: 2,
        };
        let v = make_constant_set_v(f(), 2).unwrap();
        let ka = KAssignment { values: vec![parse("t", f()).unwrap(), parse("t^4", f()).unwrap()] };
        let ex = expand(&ks, f(), &v);
        let asg = extend_assignment(&ks, &ka, f(), &v).unwrap();
        assert_eq!(asg.values.len(), ex.variables.len());
        assert_eq!(ex.first_failure(&asg), None);
        let get = |n: &str| asg.values[ex.var_index(n).unwrap()].clone().unwrap();
        assert_eq!(get("p1.W"), parse("t^4", f()).unwrap());
        assert_eq!(get("p1.S.u"), parse("t", f()).unwrap());
        assert_eq!(get("p1.S.v"), parse("1/t", f()).unwrap());

        let bad = KAssignment { values: vec![parse("t", f()).unwrap(), parse("t^3", f()).unwrap()] };
        assert_eq!(extend_assignment(&ks, &bad, f(), &v), Err(ExpandError::Unsatisfied(0)));
    }

    #[test]
    fn round_trip_through_a_solvable_system() {
        let sys = parse_nsystem("vars a b c; a |2 b; b = c + c; a = 3").unwrap();
        let ks = compile(&sys);
        let na = solve_nat(&sys, 12).unwrap();
        let ka = embed(&ks, &na, f());
        let v = make_constant_set_v(f(), 2).unwrap();
        let ex = expand(&ks, f(), &v);
        let mut asg = extend_assignment(&ks, &ka, f(), &v).unwrap();
        assert!(ex.check(&asg));
        assert!(ex.to_text().contains("any of:"));
        // breaking one witness breaks the system
        let i = ex.var_index("p1.W").unwrap();
        asg.values[i] = Some(parse("t^3", f()).unwrap());
        assert!(!ex.check(&asg));
    }
}
