//! JSON descriptors for weight families:
//! `{"kind": ..., "params": {...}, "theta0": number, "sweep_param": string}`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::measures::{SweepParam, WeightFamily, WeightKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDescriptor {
    pub kind: String,
    #[serde(default = "empty_object")]
    pub params: Value,
    #[serde(default)]
    pub theta0: f64,
    #[serde(default)]
    pub sweep_param: Option<String>,
}

/// A mixture component: a descriptor without domain or sweep information.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Component {
    kind: String,
    #[serde(default = "empty_object")]
    params: Value,
}

fn empty_object() -> Value {
    Value::Object(Default::default())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BsParams {
    r: f64,
    #[serde(default)]
    phi: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SmParams {
    r: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FhParams {
    r: f64,
    #[serde(default)]
    s: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MixParams {
    w1: Component,
    w2: Component,
    #[serde(default)]
    t: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NoParams {}

fn params<T: for<'de> Deserialize<'de>>(kind: &str, v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Domain(format!("bad params for {kind}: {e}")))
}

fn kind_from(kind: &str, p: &Value) -> Result<WeightKind> {
    let k = match kind {
        "bernstein-szego" => {
            let p: BsParams = params(kind, p)?;
            WeightKind::BernsteinSzego { r: p.r, phi: p.phi }
        }
        "single-moment" => {
            let p: SmParams = params(kind, p)?;
            WeightKind::SingleMoment { r: p.r }
        }
        "fisher-hartwig" => {
            let p: FhParams = params(kind, p)?;
            WeightKind::FisherHartwig { r: p.r, s: p.s }
        }
        "mixture" => {
            let p: MixParams = params(kind, p)?;
            WeightKind::Mixture {
                first: Box::new(kind_from(&p.w1.kind, &p.w1.params)?),
                second: Box::new(kind_from(&p.w2.kind, &p.w2.params)?),
                t: p.t,
            }
        }
        "lebesgue" => {
            let _: NoParams = params(kind, p)?;
            WeightKind::Lebesgue
        }
        other => return Err(Error::Domain(format!("unknown weight kind '{other}'"))),
    };
    k.validate()?;
    Ok(k)
}

fn params_of(kind: &WeightKind) -> Value {
    match kind {
        WeightKind::BernsteinSzego { r, phi } => json!({ "r": r, "phi": phi }),
        WeightKind::SingleMoment { r } => json!({ "r": r }),
        WeightKind::FisherHartwig { r, s } => json!({ "r": r, "s": s }),
        WeightKind::Mixture { first, second, t } => json!({
            "w1": { "kind": first.name(), "params": params_of(first) },
            "w2": { "kind": second.name(), "params": params_of(second) },
            "t": t,
        }),
        WeightKind::Lebesgue => empty_object(),
    }
}

impl FamilyDescriptor {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Domain(format!("invalid family descriptor: {e}")))
    }

    pub fn to_family(&self) -> Result<WeightFamily> {
        let kind = kind_from(&self.kind, &self.params)?;
        match &self.sweep_param {
            Some(name) => {
                let sweep = SweepParam::from_name(name)
                    .ok_or_else(|| Error::Domain(format!("unknown sweep parameter '{name}'")))?;
                WeightFamily::new(kind, self.theta0, sweep)
            }
            None => {
                let mut f = WeightFamily::with_default_sweep(kind)?;
                f.theta0 = self.theta0;
                if !f.theta0.is_finite() {
                    return Err(Error::Domain("theta0 must be finite".into()));
                }
                Ok(f)
            }
        }
    }

    /// Canonical descriptor: every field present, parameters fully spelled out.
    pub fn from_family(f: &WeightFamily) -> Self {
        Self {
            kind: f.kind.name().to_string(),
            params: params_of(&f.kind),
            theta0: f.theta0,
            sweep_param: Some(f.sweep.name().to_string()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round_trip() {
        let text = r#"{"kind":"fisher-hartwig","params":{"r":0.5,"s":-2.0},"theta0":0.0,"sweep_param":"s"}"#;
        let d = FamilyDescriptor::parse(text).unwrap();
        let f = d.to_family().unwrap();
        assert_eq!(f.kind, WeightKind::FisherHartwig { r: 0.5, s: -2.0 });
        assert_eq!(f.sweep, SweepParam::S);
        let canon = FamilyDescriptor::from_family(&f).to_json();
        let again = FamilyDescriptor::from_family(&FamilyDescriptor::parse(&canon).unwrap().to_family().unwrap()).to_json();
        assert_eq!(canon, again);
    }

    #[test]
    fn mixture_descriptor() {
        let text = r#"{"kind":"mixture","params":{"w1":{"kind":"lebesgue"},"w2":{"kind":"single-moment","params":{"r":0.4}},"t":0.25},"theta0":0.0,"sweep_param":"t"}"#;
        let f = FamilyDescriptor::parse(text).unwrap().to_family().unwrap();
        assert!((f.kind.value(0.0) - (0.75 + 0.25 * 0.6)).abs() < 1e-15);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(FamilyDescriptor::parse(r#"{"kind":"lebesgue","extra":1}"#).is_err());
        let d = FamilyDescriptor::parse(r#"{"kind":"single-moment","params":{"r":0.4,"phi":1}}"#).unwrap();
        assert!(matches!(d.to_family(), Err(Error::Domain(_))));
        let d = FamilyDescriptor::parse(r#"{"kind":"bogus"}"#).unwrap();
        assert!(d.to_family().is_err());
        let d = FamilyDescriptor::parse(r#"{"kind":"single-moment","params":{"r":1.4}}"#).unwrap();
        assert!(d.to_family().is_err());
        let d = FamilyDescriptor::parse(r#"{"kind":"single-moment","params":{"r":0.4},"sweep_param":"s"}"#).unwrap();
        assert!(d.to_family().is_err());
    }
}
