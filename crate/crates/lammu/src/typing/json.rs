//! Certificate serialisation and the textual judgement syntax
//! `x: T, y: T |- M : T | a: K`.

use super::{Basis, Derivation, Judgement, NameContext, Rule, Side, TypingError};
use crate::syntax::parse_expr;
use crate::types::{parse_any, Sort, Type};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JudgementJson {
    #[serde(default)]
    pub basis: BTreeMap<String, String>,
    pub subject: String,
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default)]
    pub context: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationJson {
    pub rule: Rule,
    pub judgement: JudgementJson,
    #[serde(default)]
    pub premises: Vec<DerivationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<SideJson>,
}

fn shape(msg: impl Into<String>) -> TypingError {
    TypingError::Shape(msg.into())
}

fn sorted_type(src: &str, sort: Sort) -> Result<Type, TypingError> {
    let t = parse_any(src)?;
    t.check_sort(sort)?;
    Ok(t)
}

fn map_from(m: &BTreeMap<String, String>, sort: Sort) -> Result<BTreeMap<String, Type>, TypingError> {
    m.iter().map(|(k, v)| Ok((k.clone(), sorted_type(v, sort)?))).collect()
}

fn map_to(m: &BTreeMap<String, Type>) -> BTreeMap<String, String> {
    m.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

impl Judgement {
    pub fn to_json(&self) -> JudgementJson {
        JudgementJson {
            basis: map_to(&self.basis),
            subject: self.subject.to_string(),
            ty: self.ty.to_string(),
            context: map_to(&self.context),
        }
    }

    pub fn from_json(j: &JudgementJson) -> Result<Judgement, TypingError> {
        let subject = parse_expr(&j.subject).map_err(|e| shape(format!("subject `{}`: {e}", j.subject)))?;
        let sort = if subject.is_term() { Sort::D } else { Sort::C };
        Ok(Judgement {
            basis: map_from(&j.basis, Sort::D)?,
            ty: sorted_type(&j.ty, sort)?,
            subject,
            context: map_from(&j.context, Sort::C)?,
        })
    }
}

impl Derivation {
    pub fn to_json(&self) -> DerivationJson {
        let s = &self.side;
        let side = SideJson {
            delta: s.delta.as_ref().map(Type::to_string),
            kappa: s.kappa.as_ref().map(Type::to_string),
            lhs: s.leq.as_ref().map(|(a, _)| a.to_string()),
            rhs: s.leq.as_ref().map(|(_, b)| b.to_string()),
        };
        DerivationJson {
            rule: self.rule,
            judgement: self.conclusion.to_json(),
            premises: self.premises.iter().map(Derivation::to_json).collect(),
            side: (side != SideJson::default()).then_some(side),
        }
    }

    pub fn from_json(j: &DerivationJson) -> Result<Derivation, TypingError> {
        let conclusion = Judgement::from_json(&j.judgement)?;
        let premises = j.premises.iter().map(Derivation::from_json).collect::<Result<_, _>>()?;
        let mut side = Side::default();
        if let Some(s) = &j.side {
            side.delta = s.delta.as_deref().map(|t| sorted_type(t, Sort::D)).transpose()?;
            side.kappa = s.kappa.as_deref().map(|t| sorted_type(t, Sort::C)).transpose()?;
            side.leq = match (&s.lhs, &s.rhs) {
                (Some(a), Some(b)) => Some((parse_any(a)?, parse_any(b)?)),
                (None, None) => None,
                _ => return Err(shape("side inequality needs both `lhs` and `rhs`")),
            };
        }
        Ok(Derivation { rule: j.rule, conclusion, premises, side })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("derivations serialise")
    }

    pub fn from_json_str(s: &str) -> Result<Derivation, TypingError> {
        let j: DerivationJson = serde_json::from_str(s).map_err(|e| shape(format!("certificate JSON: {e}")))?;
        Derivation::from_json(&j)
    }
}

fn entries(src: &str, sort: Sort) -> Result<BTreeMap<String, Type>, TypingError> {
    let mut out = BTreeMap::new();
    for item in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, t) = item.split_once(':').ok_or_else(|| shape(format!("expected `name: type`, got `{item}`")))?;
        let k = k.trim();
        if k.is_empty() || out.insert(k.to_string(), sorted_type(t.trim(), sort)?).is_some() {
            return Err(shape(format!("bad or repeated key in `{item}`")));
        }
    }
    Ok(out)
}

/// Parses `Γ |- T : σ | Δ`; the `| Δ` part may be omitted.
pub fn parse_judgement(src: &str) -> Result<Judgement, TypingError> {
    let (lhs, rhs) = src.split_once("|-").ok_or_else(|| shape("expected `|-`"))?;
    let basis: Basis = entries(lhs, Sort::D)?;
    let (subject, rest) = rhs.split_once(':').ok_or_else(|| shape("expected `subject : type`"))?;
    let subject = parse_expr(subject.trim()).map_err(|e| shape(format!("subject: {e}")))?;
    let (ty, ctx) = rest.split_once('|').unwrap_or((rest, ""));
    let sort = if subject.is_term() { Sort::D } else { Sort::C };
    let context: NameContext = entries(ctx, Sort::C)?;
    Ok(Judgement { basis, subject, ty: sorted_type(ty.trim(), sort)?, context })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn judgement_text_round_trips() {
        let j = parse_judgement("x: (psi * w -> psi) & psi |- mu a.[a] x x : psi * w -> psi | b: w").unwrap();
        assert_eq!(j.basis.len(), 1);
        assert_eq!(j.context.len(), 1);
        let again = parse_judgement(&j.to_string()).unwrap();
        assert_eq!(j, again);
    }

    #[test]
    fn commands_take_continuation_types() {
        let j = parse_judgement("x: w -> psi |- [a] x : (w -> psi) * w | a: w").unwrap();
        assert_eq!(j.sort(), Sort::C);
        assert!(parse_judgement("|- [a] x : w -> psi").is_err());
    }

    #[test]
    fn certificates_round_trip() {
        let j = parse_judgement("x: w -> psi |- x : w -> psi").unwrap();
        let d = Derivation::new(Rule::Ax, j, vec![]).leq_to(Type::psi());
        let back = Derivation::from_json_str(&d.to_json_string()).unwrap();
        assert_eq!(d, back);
    }
}
