//! JSON forms of certificates, compiled systems and assignments.
//!
//! Every element of K is stored as its canonical expression string and every
//! constant as `#x..`, so a file parses back to exactly the value written.

use std::collections::BTreeMap;

use char2_core::algebra::{FieldElem, FieldSpec, RatFunc};
use char2_core::certificates::{Base, MuEntry, SCertificate, SFamilyEntry, TCertificate, TEntry};
use char2_core::expr::{self, ParseError};
use char2_core::reducer::{KAssignment, KAtom, KSystem, NAssignment, NSystem};
use char2_core::AlgebraError;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{what}: {source}")]
    Expr { what: String, source: ParseError },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDto {
    pub m: u32,
    pub modulus: String,
}

impl FieldDto {
    pub fn from_spec(f: FieldSpec) -> Self {
        Self { m: f.degree(), modulus: format!("#x{:x}", f.modulus()) }
    }

    pub fn to_spec(&self) -> Result<FieldSpec, FormatError> {
        let hex = self.modulus.trim_start_matches("#x").trim_start_matches("0x");
        let modulus = u64::from_str_radix(hex, 16)
            .map_err(|_| FormatError::Invalid(format!("bad modulus '{}'", self.modulus)))?;
        Ok(FieldSpec::new(self.m, modulus)?)
    }
}

pub fn elem_to_string(c: FieldElem) -> String {
    format!("{c}")
}

pub fn parse_value(s: &str, field: FieldSpec, what: &str) -> Result<RatFunc, FormatError> {
    expr::parse(s, field).map_err(|source| FormatError::Expr { what: what.to_string(), source })
}

pub fn parse_elem(s: &str, field: FieldSpec, what: &str) -> Result<FieldElem, FormatError> {
    parse_value(s, field, what)?
        .as_constant()
        .ok_or_else(|| FormatError::Invalid(format!("{what}: '{s}' is not a constant")))
}

fn base_name(b: Base) -> String {
    match b {
        Base::T => "t".into(),
        Base::InvT => "1/t".into(),
    }
}

fn parse_base(s: &str) -> Result<Base, FormatError> {
    match s {
        "t" => Ok(Base::T),
        "1/t" => Ok(Base::InvT),
        _ => Err(FormatError::Invalid(format!("unknown base '{s}'"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct S1EntryDto {
    pub c: String,
    pub c_prime: String,
    pub d: String,
    pub d_prime: String,
    pub u: String,
    pub v: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct S1Dto {
    pub field: FieldDto,
    pub base: String,
    pub v_set: Vec<String>,
    pub s: u32,
    pub w: String,
    pub u: String,
    pub v: String,
    pub family: Vec<S1EntryDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct T1EntryDto {
    pub c: String,
    pub c_prime: String,
    pub d: String,
    pub d_prime: String,
    pub e: i8,
    pub g: i8,
    pub sigma: String,
    pub lambda: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuDto {
    pub c: String,
    pub d: String,
    pub e: i8,
    pub g: i8,
    pub mu: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct T1Dto {
    pub field: FieldDto,
    pub base: String,
    pub v_set: Vec<String>,
    pub s: u32,
    pub x: String,
    pub v: String,
    pub entries: Vec<T1EntryDto>,
    pub mu: Vec<MuDto>,
}

/// A certificate file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CertificateDto {
    S1(S1Dto),
    T1(T1Dto),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    S1(SCertificate),
    T1(TCertificate),
}

fn rf(r: &RatFunc) -> String {
    expr::to_string(r)
}

impl CertificateDto {
    pub fn from_s1(c: &SCertificate) -> Self {
        CertificateDto::S1(S1Dto {
            field: FieldDto::from_spec(c.field),
            base: base_name(c.base),
            v_set: c.v_set.iter().map(|&x| elem_to_string(x)).collect(),
            s: c.s,
            w: rf(&c.w),
            u: rf(&c.u),
            v: rf(&c.v),
            family: c
                .family
                .iter()
                .map(|e| S1EntryDto {
                    c: elem_to_string(e.c),
                    c_prime: elem_to_string(e.c_prime),
                    d: elem_to_string(e.d),
                    d_prime: elem_to_string(e.d_prime),
                    u: rf(&e.u),
                    v: rf(&e.v),
                })
                .collect(),
        })
    }

    pub fn from_t1(c: &TCertificate) -> Self {
        CertificateDto::T1(T1Dto {
            field: FieldDto::from_spec(c.field),
            base: base_name(c.base),
            v_set: c.v_set.iter().map(|&x| elem_to_string(x)).collect(),
            s: c.s,
            x: rf(&c.x),
            v: rf(&c.v),
            entries: c
                .entries
                .iter()
                .map(|e| T1EntryDto {
                    c: elem_to_string(e.c),
                    c_prime: elem_to_string(e.c_prime),
                    d: elem_to_string(e.d),
                    d_prime: elem_to_string(e.d_prime),
                    e: e.e,
                    g: e.g,
                    sigma: rf(&e.sigma),
                    lambda: rf(&e.lambda),
                })
                .collect(),
            mu: c
                .mu
                .iter()
                .map(|m| MuDto { c: elem_to_string(m.c), d: elem_to_string(m.d), e: m.e, g: m.g, mu: rf(&m.mu) })
                .collect(),
        })
    }

    pub fn from_certificate(c: &Certificate) -> Self {
        match c {
            Certificate::S1(s) => Self::from_s1(s),
            Certificate::T1(t) => Self::from_t1(t),
        }
    }

    pub fn to_certificate(&self) -> Result<Certificate, FormatError> {
        match self {
            CertificateDto::S1(d) => {
                let f = d.field.to_spec()?;
                let el = |s: &str, what: &str| parse_elem(s, f, what);
                let val = |s: &str, what: &str| parse_value(s, f, what);
                let v_set = d.v_set.iter().map(|s| el(s, "v_set")).collect::<Result<_, _>>()?;
                let family = d
                    .family
                    .iter()
                    .map(|e| {
                        Ok(SFamilyEntry {
                            c: el(&e.c, "c")?,
                            c_prime: el(&e.c_prime, "c_prime")?,
                            d: el(&e.d, "d")?,
                            d_prime: el(&e.d_prime, "d_prime")?,
                            u: val(&e.u, "family u")?,
                            v: val(&e.v, "family v")?,
                        })
                    })
                    .collect::<Result<_, FormatError>>()?;
                Ok(Certificate::S1(SCertificate {
                    field: f,
                    base: parse_base(&d.base)?,
                    v_set,
                    w: val(&d.w, "w")?,
                    s: d.s,
                    u: val(&d.u, "u")?,
                    v: val(&d.v, "v")?,
                    family,
                }))
            }
            CertificateDto::T1(d) => {
                let f = d.field.to_spec()?;
                let el = |s: &str, what: &str| parse_elem(s, f, what);
                let val = |s: &str, what: &str| parse_value(s, f, what);
                let v_set = d.v_set.iter().map(|s| el(s, "v_set")).collect::<Result<_, _>>()?;
                let entries = d
                    .entries
                    .iter()
                    .map(|e| {
                        Ok(TEntry {
                            c: el(&e.c, "c")?,
                            c_prime: el(&e.c_prime, "c_prime")?,
                            d: el(&e.d, "d")?,
                            d_prime: el(&e.d_prime, "d_prime")?,
                            e: e.e,
                            g: e.g,
                            sigma: val(&e.sigma, "sigma")?,
                            lambda: val(&e.lambda, "lambda")?,
                        })
                    })
                    .collect::<Result<_, FormatError>>()?;
                let mu = d
                    .mu
                    .iter()
                    .map(|m| {
                        Ok(MuEntry { c: el(&m.c, "c")?, d: el(&m.d, "d")?, e: m.e, g: m.g, mu: val(&m.mu, "mu")? })
                    })
                    .collect::<Result<_, FormatError>>()?;
                Ok(Certificate::T1(TCertificate {
                    field: f,
                    base: parse_base(&d.base)?,
                    v_set,
                    x: val(&d.x, "x")?,
                    v: val(&d.v, "v")?,
                    s: d.s,
                    entries,
                    mu,
                }))
            }
        }
    }
}

pub fn certificate_to_json(c: &Certificate) -> String {
    serde_json::to_string_pretty(&CertificateDto::from_certificate(c)).expect("serializable")
}

pub fn certificate_from_json(text: &str) -> Result<Certificate, FormatError> {
    serde_json::from_str::<CertificateDto>(text)?.to_certificate()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum KAtomDto {
    Mul { a: String, b: String, c: String },
    PowerLink { x: String, w: String },
    OrdMatch { w: String, y: String },
    IntMember { z: String },
    OrdConst { z: String, k: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KAtomRecord {
    #[serde(flatten)]
    pub atom: KAtomDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSystemDto {
    pub variables: Vec<String>,
    pub primary: usize,
    pub atoms: Vec<KAtomRecord>,
}

impl KSystemDto {
    pub fn from_ksystem(ks: &KSystem) -> Self {
        let n = |i: usize| ks.variables[i].clone();
        let atoms = ks
            .atoms
            .iter()
            .zip(&ks.origin)
            .map(|(a, &origin)| KAtomRecord {
                atom: match *a {
                    KAtom::MulEq(a, b, c) => KAtomDto::Mul { a: n(a), b: n(b), c: n(c) },
                    KAtom::PowerLink { x, w } => KAtomDto::PowerLink { x: n(x), w: n(w) },
                    KAtom::OrdMatch { w, y } => KAtomDto::OrdMatch { w: n(w), y: n(y) },
                    KAtom::IntMember(z) => KAtomDto::IntMember { z: n(z) },
                    KAtom::OrdConst(z, k) => KAtomDto::OrdConst { z: n(z), k },
                },
                origin,
            })
            .collect();
        Self { variables: ks.variables.clone(), primary: ks.primary, atoms }
    }

    pub fn to_ksystem(&self) -> Result<KSystem, FormatError> {
        let idx = |name: &str| {
            self.variables
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| FormatError::Invalid(format!("undeclared variable '{name}'")))
        };
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for r in &self.atoms {
            atoms.push(match &r.atom {
                KAtomDto::Mul { a, b, c } => KAtom::MulEq(idx(a)?, idx(b)?, idx(c)?),
                KAtomDto::PowerLink { x, w } => KAtom::PowerLink { x: idx(x)?, w: idx(w)? },
                KAtomDto::OrdMatch { w, y } => KAtom::OrdMatch { w: idx(w)?, y: idx(y)? },
                KAtomDto::IntMember { z } => KAtom::IntMember(idx(z)?),
                KAtomDto::OrdConst { z, k } => KAtom::OrdConst(idx(z)?, *k),
            });
        }
        if self.primary > self.variables.len() {
            return Err(FormatError::Invalid("primary exceeds the variable count".into()));
        }
        Ok(KSystem {
            variables: self.variables.clone(),
            atoms,
            origin: self.atoms.iter().map(|r| r.origin).collect(),
            primary: self.primary,
        })
    }
}

pub fn ksystem_to_json(ks: &KSystem) -> String {
    serde_json::to_string(&KSystemDto::from_ksystem(ks)).expect("serializable")
}

pub fn ksystem_from_json(text: &str) -> Result<KSystem, FormatError> {
    serde_json::from_str::<KSystemDto>(text)?.to_ksystem()
}

/// `{"field": .., "values": {name: value}}`. Values are numbers for an
/// assignment over N and expression strings for one over K.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssignmentDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDto>,
    pub values: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Assignment {
    Nat(BTreeMap<String, u64>),
    K(BTreeMap<String, RatFunc>),
}

pub fn nassignment_to_json(sys: &NSystem, na: &NAssignment) -> String {
    let values = sys.variables.iter().cloned().zip(na.values.iter().map(|&v| Value::from(v))).collect();
    serde_json::to_string(&AssignmentDto { field: None, values }).expect("serializable")
}

pub fn kassignment_to_json(ks: &KSystem, ka: &KAssignment, field: FieldSpec) -> String {
    let values = ks.variables.iter().cloned().zip(ka.values.iter().map(|v| Value::from(rf(v)))).collect();
    serde_json::to_string(&AssignmentDto { field: Some(FieldDto::from_spec(field)), values })
        .expect("serializable")
}

/// Parses an assignment; `default_field` applies when the file names none.
pub fn assignment_from_json(text: &str, default_field: FieldSpec) -> Result<(Assignment, FieldSpec), FormatError> {
    let dto: AssignmentDto = serde_json::from_str(text)?;
    let field = match &dto.field {
        Some(f) => f.to_spec()?,
        None => default_field,
    };
    if dto.values.values().all(Value::is_u64) {
        let map = dto.values.iter().map(|(k, v)| (k.clone(), v.as_u64().expect("checked"))).collect();
        return Ok((Assignment::Nat(map), field));
    }
    let mut map = BTreeMap::new();
    for (k, v) in &dto.values {
        let s = v
            .as_str()
            .ok_or_else(|| FormatError::Invalid(format!("value of '{k}' must be a string or a natural number")))?;
        map.insert(k.clone(), parse_value(s, field, k)?);
    }
    Ok((Assignment::K(map), field))
}

/// Orders named values along `names`; every name must be present.
pub fn ordered<T: Clone>(names: &[String], map: &BTreeMap<String, T>) -> Result<Vec<T>, FormatError> {
    names
        .iter()
        .map(|n| map.get(n).cloned().ok_or_else(|| FormatError::Invalid(format!("no value for '{n}'"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use char2_core::algebra::make_constant_set_v;
    use char2_core::certificates::{build_s1_certificate, build_t1_certificate};
    use char2_core::reducer::{compile, parse_nsystem};

    #[test]
    fn field_round_trip() {
        let f = FieldSpec::gf256();
        let dto = FieldDto::from_spec(f);
        assert_eq!(dto.modulus, "#x11b");
        assert_eq!(dto.to_spec().unwrap(), f);
        assert!(FieldDto { m: 8, modulus: "#x100".into() }.to_spec().is_err());
    }

    #[test]
    fn certificates_round_trip() {
        let f = FieldSpec::gf256();
        let v = make_constant_set_v(f, 3).unwrap();
        let s = Certificate::S1(build_s1_certificate(f, 2, &v));
        assert_eq!(certificate_from_json(&certificate_to_json(&s)).unwrap(), s);
        let x = expr::parse("(t + #x3)/t^2", f).unwrap();
        let t = Certificate::T1(build_t1_certificate(&x, 1, &v).unwrap());
        assert_eq!(certificate_from_json(&certificate_to_json(&t)).unwrap(), t);
    }

    #[test]
    fn ksystem_round_trip() {
        let ks = compile(&parse_nsystem("c = a + b; a |2 c; b = 2").unwrap());
        let text = ksystem_to_json(&ks);
        assert!(text.contains(r#""op":"power_link""#));
        assert_eq!(ksystem_from_json(&text).unwrap(), ks);
    }

    #[test]
    fn assignments() {
        let f = FieldSpec::gf256();
        let (a, _) = assignment_from_json(r#"{"values": {"a": 1, "b": 4}}"#, f).unwrap();
        assert_eq!(a, Assignment::Nat([("a".to_string(), 1), ("b".to_string(), 4)].into()));
        let (a, _) = assignment_from_json(r#"{"values": {"z": "t^2"}}"#, f).unwrap();
        let Assignment::K(m) = a else { panic!() };
        assert_eq!(m["z"], RatFunc::t_pow(f, 2));
        assert!(assignment_from_json(r#"{"values": {"z": true}}"#, f).is_err());
    }
}
