//! Run configuration shared by all subcommands, with a canonical JSON form.

use std::fmt;
use std::str::FromStr;

use popuc_core::trajectory::{BRule, UnimodularPath};
use popuc_core::{Complex64, FamilyDescriptor};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Opuc,
    PopucZeros,
    Sweep,
    Compare,
    Verify,
    Figure,
}

/// Parsed form of `const:<re>,<im>`, `fixed-zero:<re>,<im>` or `unimodular-path:exp(i*t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BSpec {
    Const(Complex64),
    FixedZero(Complex64),
    Path(UnimodularPath),
}

fn parse_pair(text: &str) -> CliResult<Complex64> {
    let (re, im) = text.split_once(',').ok_or_else(|| CliError::Config(format!("expected '<re>,<im>', got '{text}'")))?;
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| CliError::Config(format!("invalid number '{s}'")));
    let z = Complex64::new(parse(re)?, parse(im)?);
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(CliError::Config(format!("non-finite value '{text}'")));
    }
    Ok(z)
}

impl FromStr for BSpec {
    type Err = CliError;

    fn from_str(text: &str) -> CliResult<Self> {
        let (tag, rest) = text.split_once(':').ok_or_else(|| CliError::Config(format!("b spec '{text}' has no tag")))?;
        match tag {
            "const" => Ok(BSpec::Const(parse_pair(rest)?)),
            "fixed-zero" => Ok(BSpec::FixedZero(parse_pair(rest)?)),
            "unimodular-path" => UnimodularPath::parse(rest).map(BSpec::Path).map_err(|e| CliError::Config(e.to_string())),
            other => Err(CliError::Config(format!("unknown b spec tag '{other}'"))),
        }
    }
}

impl fmt::Display for BSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BSpec::Const(b) => write!(f, "const:{:?},{:?}", b.re, b.im),
            BSpec::FixedZero(x) => write!(f, "fixed-zero:{:?},{:?}", x.re, x.im),
            BSpec::Path(p) if p.scale == 1.0 && p.offset == 0.0 => write!(f, "unimodular-path:exp(i*t)"),
            BSpec::Path(p) if p.offset == 0.0 => write!(f, "unimodular-path:exp(i*{:?}*t)", p.scale),
            BSpec::Path(p) => write!(f, "unimodular-path:exp(i*({:?}*t+{:?}))", p.scale, p.offset),
        }
    }
}

impl BSpec {
    pub fn rule(&self) -> BRule {
        match *self {
            BSpec::Const(b) => BRule::Constant(b),
            BSpec::FixedZero(x) => BRule::FixedZero(x),
            BSpec::Path(p) => BRule::OfT(p),
        }
    }
}

/// How `compare` pins the two POPUC.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnchorSpec {
    SharedZero(Complex64),
    Symmetric(f64),
    SameB(Complex64),
}

impl FromStr for AnchorSpec {
    type Err = CliError;

    fn from_str(text: &str) -> CliResult<Self> {
        let (tag, rest) = text.split_once(':').ok_or_else(|| CliError::Config(format!("anchor '{text}' has no tag")))?;
        match tag {
            "shared-zero" => Ok(AnchorSpec::SharedZero(parse_pair(rest)?)),
            "symmetric" => match rest.trim() {
                "1" | "+1" | "1.0" => Ok(AnchorSpec::Symmetric(1.0)),
                "-1" | "-1.0" => Ok(AnchorSpec::Symmetric(-1.0)),
                other => Err(CliError::Config(format!("symmetric anchor needs b = ±1, got '{other}'"))),
            },
            "b" => Ok(AnchorSpec::SameB(parse_pair(rest)?)),
            other => Err(CliError::Config(format!("unknown anchor tag '{other}'"))),
        }
    }
}

impl fmt::Display for AnchorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnchorSpec::SharedZero(x) => write!(f, "shared-zero:{:?},{:?}", x.re, x.im),
            AnchorSpec::Symmetric(b) => write!(f, "symmetric:{}", if *b > 0.0 { "1" } else { "-1" }),
            AnchorSpec::SameB(b) => write!(f, "b:{:?},{:?}", b.re, b.im),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TRange {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl TRange {
    /// `steps` equally spaced points from `start` to `end` inclusive.
    pub fn grid(&self) -> CliResult<Vec<f64>> {
        if self.steps < 2 || !(self.end > self.start) || !self.start.is_finite() || !self.end.is_finite() {
            return Err(CliError::Config(format!("invalid t-range {},{},{}", self.start, self.end, self.steps)));
        }
        let h = (self.end - self.start) / (self.steps - 1) as f64;
        Ok((0..self.steps).map(|i| if i + 1 == self.steps { self.end } else { self.start + h * i as f64 }).collect())
    }
}

impl FromStr for TRange {
    type Err = CliError;

    fn from_str(text: &str) -> CliResult<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let bad = || CliError::Config(format!("t-range must be '<start>,<end>,<steps>', got '{text}'"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let r = TRange {
            start: parts[0].parse().map_err(|_| bad())?,
            end: parts[1].parse().map_err(|_| bad())?,
            steps: parts[2].parse().map_err(|_| bad())?,
        };
        r.grid()?;
        Ok(r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub circle_tol: f64,
    pub sep_tol: f64,
    pub match_gap: f64,
    pub mono_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { circle_tol: 1e-8, sep_tol: 1e-9, match_gap: 0.5, mono_tol: 1e-10 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    /// Directory for multi-file outputs.
    pub dir: Option<String>,
    /// Single output file; stdout when absent.
    pub file: Option<String>,
    #[serde(default = "yes")]
    pub svg: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default)]
    pub family: Option<FamilyDescriptor>,
    #[serde(default)]
    pub family2: Option<FamilyDescriptor>,
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub b_spec: Option<String>,
    #[serde(default)]
    pub anchor: Option<String>,
    #[serde(default)]
    pub t: Option<f64>,
    #[serde(default)]
    pub t_range: Option<TRange>,
    #[serde(default)]
    pub theta0: Option<f64>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub outputs: Outputs,
    #[serde(default)]
    pub figure: Option<String>,
    #[serde(default)]
    pub suite: Option<String>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            family: None,
            family2: None,
            degree: None,
            b_spec: None,
            anchor: None,
            t: None,
            t_range: None,
            theta0: None,
            tolerances: Tolerances::default(),
            outputs: Outputs { svg: true, ..Outputs::default() },
            figure: None,
            suite: None,
        }
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid run config: {e}")))
    }

    /// Normal form: descriptors fully spelled out, specs re-rendered.
    pub fn canonical(&self) -> CliResult<Self> {
        let mut c = self.clone();
        let canon_family = |d: &FamilyDescriptor| -> CliResult<FamilyDescriptor> {
            let f = d.to_family()?;
            Ok(FamilyDescriptor::from_family(&f))
        };
        c.family = self.family.as_ref().map(canon_family).transpose()?;
        c.family2 = self.family2.as_ref().map(canon_family).transpose()?;
        c.b_spec = self.b_spec.as_deref().map(|s| s.parse::<BSpec>().map(|b| b.to_string())).transpose()?;
        c.anchor = self.anchor.as_deref().map(|s| s.parse::<AnchorSpec>().map(|a| a.to_string())).transpose()?;
        Ok(c)
    }

    pub fn to_canonical_json(&self) -> CliResult<String> {
        Ok(serde_json::to_string_pretty(&self.canonical()?).expect("config serializes") + "\n")
    }

    pub fn b(&self) -> CliResult<BSpec> {
        self.b_spec.as_deref().ok_or_else(|| CliError::Config("missing --b".into()))?.parse()
    }

    pub fn family_descriptor(&self) -> CliResult<&FamilyDescriptor> {
        self.family.as_ref().ok_or_else(|| CliError::Config("missing --family".into()))
    }

    pub fn degree(&self) -> CliResult<usize> {
        self.degree.ok_or_else(|| CliError::Config("missing --degree".into()))
    }
}

/// Reads a family argument: inline JSON, `@path` to a JSON file, or a bare kind name.
pub fn parse_family_arg(text: &str) -> CliResult<FamilyDescriptor> {
    let trimmed = text.trim();
    let json = if let Some(path) = trimmed.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| CliError::io(std::path::Path::new(path), e))?
    } else if trimmed.starts_with('{') {
        trimmed.to_string()
    } else {
        serde_json::json!({ "kind": trimmed }).to_string()
    };
    let d = FamilyDescriptor::parse(&json).map_err(|e| CliError::Config(e.to_string()))?;
    d.to_family().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_specs_round_trip() {
        for text in ["const:1.0,0.0", "fixed-zero:0.0,1.0", "unimodular-path:exp(i*t)", "unimodular-path:exp(i*2.0*t)", "unimodular-path:exp(i*(2.0*t+0.5))"] {
            let b: BSpec = text.parse().unwrap();
            assert_eq!(b.to_string(), text);
        }
        assert!("const:1".parse::<BSpec>().is_err());
        assert!("exp:1,0".parse::<BSpec>().is_err());
        assert_eq!("const:1,0".parse::<BSpec>().unwrap().to_string(), "const:1.0,0.0");
    }

    #[test]
    fn t_range_grid() {
        let r: TRange = "0.1,0.9,9".parse().unwrap();
        let g = r.grid().unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g[8], 0.9);
        assert!("1,0,3".parse::<TRange>().is_err());
    }

    #[test]
    fn config_canonical_round_trip() {
        let mut c = RunConfig::new(Command::Sweep);
        c.family = Some(parse_family_arg(r#"{"kind":"bernstein-szego","params":{"r":0.5}}"#).unwrap());
        c.degree = Some(15);
        c.b_spec = Some("fixed-zero:1,0".into());
        c.t_range = Some("0.1,0.9,9".parse().unwrap());
        let text = c.to_canonical_json().unwrap();
        let back = RunConfig::from_json(&text).unwrap();
        assert_eq!(back.to_canonical_json().unwrap(), text);
        assert_eq!(back.b_spec.as_deref(), Some("fixed-zero:1.0,0.0"));
    }

    #[test]
    fn bare_family_names() {
        assert_eq!(parse_family_arg("lebesgue").unwrap().kind, "lebesgue");
        assert!(parse_family_arg("bernstein-szego").is_err());
    }
}
