use crate::{CliError, FamilyOpts};
use chebden::coeffs::ParamVector;
use chebden::densities::{
    density_eval, f2_conj, f4_conj, marginal_arcsine, marginal_semicircle, Density,
};
use serde_json::json;

/// A density family selected on the command line.
#[derive(Debug, Clone)]
pub enum Family {
    Product(ParamVector),
    Conj2 { rho: f64, y: f64 },
    Conj4 { rho1: f64, y1: f64, rho2: f64, y2: f64 },
    MargArcsine { rho: f64 },
    MargSemicircle { rho: f64 },
}

fn require<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("family '{family}' requires --{flag}")))
}

impl Family {
    pub fn from_opts(opts: &FamilyOpts) -> Result<Family, CliError> {
        match opts.family.as_str() {
            "fn" => {
                let raw = opts
                    .a
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("family 'fn' requires --a".into()))?;
                Ok(Family::Product(parse_pole_list(raw, ',')?))
            }
            "f2" => Ok(Family::Conj2 {
                rho: require(opts.rho, "rho", "f2")?,
                y: require(opts.y, "y", "f2")?,
            }),
            "f4" => Ok(Family::Conj4 {
                rho1: require(opts.rho1, "rho1", "f4")?,
                y1: require(opts.y1, "y1", "f4")?,
                rho2: require(opts.rho2, "rho2", "f4")?,
                y2: require(opts.y2, "y2", "f4")?,
            }),
            "marg-fc" => Ok(Family::MargArcsine {
                rho: require(opts.rho, "rho", "marg-fc")?,
            }),
            "marg-fw" => Ok(Family::MargSemicircle {
                rho: require(opts.rho, "rho", "marg-fw")?,
            }),
            other => Err(CliError::Usage(format!(
                "unknown family '{other}'; available: fn, f2, f4, marg-fc, marg-fw"
            ))),
        }
    }

    /// Closed-form density value.
    pub fn pdf(&self, x: f64) -> chebden::Result<f64> {
        match self {
            Family::Product(p) => density_eval(p, x),
            Family::Conj2 { rho, y } => f2_conj(*rho, *y, x),
            Family::Conj4 { rho1, y1, rho2, y2 } => f4_conj(*rho1, *y1, *rho2, *y2, x),
            Family::MargArcsine { rho } => marginal_arcsine(*rho, x),
            Family::MargSemicircle { rho } => marginal_semicircle(*rho, x),
        }
    }

    /// Series-backed [`Density`] for CDF evaluation and sampling.
    pub fn density(&self) -> Result<Density, CliError> {
        match self {
            Family::Product(p) => Ok(Density::product(p.clone())?),
            Family::Conj2 { rho, y } => Ok(Density::conj_pair(*rho, *y)?),
            Family::Conj4 { rho1, y1, rho2, y2 } => {
                Ok(Density::conj_pairs(*rho1, *y1, *rho2, *y2)?)
            }
            Family::MargArcsine { .. } | Family::MargSemicircle { .. } => Err(CliError::Usage(
                "CDF and sampling cover fn, f2 and f4; the marginals are evaluation-only".into(),
            )),
        }
    }

    /// JSON description for the sample sidecar.
    pub fn describe(&self) -> serde_json::Value {
        match self {
            Family::Product(p) => json!({ "kind": "fn", "a": p.values() }),
            Family::Conj2 { rho, y } => json!({ "kind": "f2", "rho": rho, "y": y }),
            Family::Conj4 { rho1, y1, rho2, y2 } => json!({
                "kind": "f4", "rho1": rho1, "y1": y1, "rho2": rho2, "y2": y2,
            }),
            Family::MargArcsine { rho } => json!({ "kind": "marg-fc", "rho": rho }),
            Family::MargSemicircle { rho } => json!({ "kind": "marg-fw", "rho": rho }),
        }
    }
}

/// Parses a separator-delimited pole list into a validated ParamVector.
pub fn parse_pole_list(raw: &str, sep: char) -> Result<ParamVector, CliError> {
    let values: Vec<f64> = raw
        .split(sep)
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("'{tok}' is not a number in --a")))
        })
        .collect::<Result<_, _>>()?;
    ParamVector::new(values).map_err(CliError::from)
}

/// Parses one `table` curve spec: `[cdf:]family:params`.
pub fn parse_curve_spec(raw: &str) -> Result<(bool, Family), CliError> {
    let usage = || {
        CliError::Usage(format!(
            "curve '{raw}' is not of the form [cdf:]family:params \
             (e.g. f2:0.5:0.5, cdf:fn:0.5;-0.25, marg-fw:0.8)"
        ))
    };
    let mut parts: Vec<&str> = raw.split(':').collect();
    let want_cdf = parts.first() == Some(&"cdf");
    if want_cdf {
        parts.remove(0);
    }
    if parts.is_empty() {
        return Err(usage());
    }
    let family = parts.remove(0);
    if family == "fn" {
        let [poles] = parts.as_slice() else {
            return Err(usage());
        };
        return Ok((want_cdf, Family::Product(parse_pole_list(poles, ';')?)));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|tok| tok.parse::<f64>().map_err(|_| usage()))
        .collect::<Result<_, _>>()?;
    let fam = match (family, nums.as_slice()) {
        ("f2", [rho, y]) => Family::Conj2 { rho: *rho, y: *y },
        ("f4", [rho1, y1, rho2, y2]) => Family::Conj4 {
            rho1: *rho1,
            y1: *y1,
            rho2: *rho2,
            y2: *y2,
        },
        ("marg-fc", [rho]) => Family::MargArcsine { rho: *rho },
        ("marg-fw", [rho]) => Family::MargSemicircle { rho: *rho },
        _ => return Err(usage()),
    };
    Ok((want_cdf, fam))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pole_list_parsing() {
        let p = parse_pole_list("0.5,-0.25", ',').unwrap();
        assert_eq!(p.values(), &[0.5, -0.25]);
        assert!(parse_pole_list("0.5,abc", ',').is_err());
        assert!(parse_pole_list("1.5", ',').is_err());
    }

    #[test]
    fn curve_specs() {
        let (cdf, fam) = parse_curve_spec("f2:0.5:0.5").unwrap();
        assert!(!cdf);
        assert!(matches!(fam, Family::Conj2 { .. }));
        let (cdf, fam) = parse_curve_spec("cdf:fn:0.5;-0.25").unwrap();
        assert!(cdf);
        assert!(matches!(fam, Family::Product(_)));
        let (_, fam) = parse_curve_spec("f4:0.6:0.3:0.4:-0.5").unwrap();
        assert!(matches!(fam, Family::Conj4 { .. }));
        let (_, fam) = parse_curve_spec("marg-fw:0.8").unwrap();
        assert!(matches!(fam, Family::MargSemicircle { .. }));
        for bad in ["f2:0.5", "nope:1", "f4:1:2:3", "cdf:", "f2:a:b"] {
            assert!(parse_curve_spec(bad).is_err(), "{bad}");
        }
    }
}
