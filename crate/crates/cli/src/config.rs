use std::ops::Range;
use std::sync::Arc;

use hnd_core::affine_weyl::NodeSet;
use hnd_core::frobenius::{parse_diagram, Frobenius, GroupInstance};
use hnd_core::hn_theory::build_group;
use hnd_core::rational::parse_q;
use hnd_core::CartanType;
use serde::Deserialize;
use toml::Spanned;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    #[serde(rename = "type")]
    pub cartan_type: Spanned<String>,
    pub rank: Spanned<i64>,
    pub mu: Spanned<Vec<Spanned<toml::Value>>>,
    #[serde(default)]
    pub sigma: SigmaConfig,
    #[serde(rename = "K", default)]
    pub k: Option<Spanned<Vec<Spanned<i64>>>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaConfig {
    pub omega: Option<Spanned<i64>>,
    pub diagram: Option<Spanned<String>>,
}

/// A diagnostic pointing into the config text.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

fn at(text: &str, span: Range<usize>, msg: impl std::fmt::Display) -> ConfigError {
    let (l, c) = line_col(text, span.start);
    ConfigError(format!("line {l}, column {c}: {msg}"))
}

impl InstanceConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| match e.span() {
            Some(span) => at(text, span, e.message()),
            None => ConfigError(e.to_string()),
        })
    }

    /// Validate against the root datum and build the instance.
    pub fn instance(&self, text: &str) -> Result<GroupInstance, ConfigError> {
        let t: CartanType =
            self.cartan_type.get_ref().parse().map_err(|e| at(text, self.cartan_type.span(), e))?;
        let rank = usize::try_from(*self.rank.get_ref())
            .map_err(|_| at(text, self.rank.span(), "rank must be positive"))?;
        let g = build_group(t, rank).map_err(|e| at(text, self.rank.span(), e))?;

        let mut mu = Vec::new();
        for entry in self.mu.get_ref() {
            let x = match entry.get_ref() {
                toml::Value::Integer(n) => *n,
                toml::Value::String(s) => {
                    let x = parse_q(s).map_err(|e| at(text, entry.span(), e))?;
                    if !x.is_integer() {
                        return Err(at(text, entry.span(), format!("{s} is not integral in coweight coordinates")));
                    }
                    *x.numer()
                }
                other => return Err(at(text, entry.span(), format!("expected a rational string, found {other}"))),
            };
            mu.push(x);
        }

        let omega = match &self.sigma.omega {
            Some(o) => usize::try_from(*o.get_ref()).map_err(|_| at(text, o.span(), "negative Omega index"))?,
            None => 0,
        };
        let diagram = match &self.sigma.diagram {
            Some(d) => parse_diagram(g.datum(), d.get_ref()).map_err(|e| at(text, d.span(), e))?,
            None => hnd_core::frobenius::identity_perm(rank),
        };
        let sigma_span = self.sigma.omega.as_ref().map(|o| o.span()).unwrap_or(0..0);
        let sigma = Frobenius::new(g, omega, diagram).map_err(|e| at(text, sigma_span, e))?;

        let mut k = NodeSet::empty();
        let mut k_span = 0..0;
        if let Some(ks) = &self.k {
            k_span = ks.span();
            for i in ks.get_ref() {
                let n = usize::try_from(*i.get_ref())
                    .ok()
                    .filter(|&n| n <= rank)
                    .ok_or_else(|| at(text, i.span(), format!("node {} outside 0..={rank}", i.get_ref())))?;
                k.insert(n);
            }
        }
        GroupInstance::new(Arc::new(sigma), &mu, k).map_err(|e| {
            let span = if e.to_string().contains("K =") { k_span } else { self.mu.span() };
            at(text, span, e)
        })
    }
}

pub fn load(text: &str) -> Result<GroupInstance, ConfigError> {
    InstanceConfig::parse(text)?.instance(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure2_config() {
        let text = "type = \"C\"\nrank = 2\nmu = [\"0\", \"1\"]\nK = [1]\n[sigma]\nomega = 0\ndiagram = \"id\"\n";
        let i = load(text).unwrap();
        assert_eq!(i.mu.to_vec(), vec![0, 1]);
        assert!(i.k.contains(1));
    }

    #[test]
    fn diagnostics_carry_position() {
        let e = load("type = \"A\"\nrank = 1\nmu = [\"1/x\"]\n").unwrap_err();
        assert!(e.0.starts_with("line 3, column 7"), "{e}");
        let e = load("type = \"A\"\nrank = 1\nmu = [\"1\"]\ncolour = 3\n").unwrap_err();
        assert!(e.0.starts_with("line 4"), "{e}");
        let e = load("type = \"A\"\nrank = 1\nmu = [\"1/2\"]\n").unwrap_err();
        assert!(e.0.contains("not integral"), "{e}");
    }
}
