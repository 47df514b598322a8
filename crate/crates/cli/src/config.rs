//! Flat `key = value` config files. Command-line flags override file values.
//!
//! ```text
//! # instance by catalog name ...
//! instance = C
//! # ... or by explicit fields
//! base = quadratic      # integers | rational | quadratic
//! k_disc = -5
//! t_kind = poly         # poly | local
//! seed = 7
//! count = 100
//! ```

use std::path::PathBuf;

use starpull_core::harness::SampleParams;
use starpull_core::pullback::{make_instance, BaseSpec, InstanceConfig, PullbackInstance, TKind};
use starpull_core::{Error, Result};

pub const KEYS: [&str; 15] = [
    "instance", "base", "k_disc", "t_kind", "seed", "count", "max_gens", "max_degree", "height", "window_degree",
    "window_height", "op", "suite", "out", "json",
];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub instance: Option<String>,
    pub base: Option<String>,
    pub k_disc: Option<i64>,
    pub t_kind: Option<String>,
    pub seed: Option<u64>,
    pub count: Option<usize>,
    pub max_gens: Option<usize>,
    pub max_degree: Option<u32>,
    pub height: Option<i64>,
    pub window_degree: Option<u32>,
    pub window_height: Option<i64>,
    pub op: Option<String>,
    pub suite: Option<String>,
    pub out: Option<PathBuf>,
    pub json: Option<bool>,
}

fn number<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value.parse().map_err(|_| Error::Config(format!("line {line}: invalid value '{value}' for {key}")))
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Config::default();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {line}: expected `key = value`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "instance" => c.instance = Some(value.into()),
                "base" => c.base = Some(value.into()),
                "k_disc" => c.k_disc = Some(number(key, value, line)?),
                "t_kind" => c.t_kind = Some(value.into()),
                "seed" => c.seed = Some(number(key, value, line)?),
                "count" => c.count = Some(number(key, value, line)?),
                "max_gens" => c.max_gens = Some(number(key, value, line)?),
                "max_degree" => c.max_degree = Some(number(key, value, line)?),
                "height" => c.height = Some(number(key, value, line)?),
                "window_degree" => c.window_degree = Some(number(key, value, line)?),
                "window_height" => c.window_height = Some(number(key, value, line)?),
                "op" => c.op = Some(value.into()),
                "suite" => c.suite = Some(value.into()),
                "out" => c.out = Some(value.into()),
                "json" => c.json = Some(number(key, value, line)?),
                other => {
                    return Err(Error::Config(format!("line {line}: unknown key '{other}'; known: {}", KEYS.join(", "))))
                }
            }
        }
        Ok(c)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The instance named by `instance`, or assembled from `base`, `k_disc`
    /// and `t_kind`.
    pub fn instance(&self) -> Result<PullbackInstance> {
        if let Some(name) = &self.instance {
            if self.base.is_some() || self.t_kind.is_some() || self.k_disc.is_some() {
                return Err(Error::Config("give either `instance` or explicit fields, not both".into()));
            }
            return PullbackInstance::catalog(name);
        }
        let Some(base) = &self.base else {
            return Err(Error::Config("no instance given".into()));
        };
        let k_disc = self.k_disc.unwrap_or(1);
        let base = match base.as_str() {
            "integers" => BaseSpec::Integers,
            "rational" => BaseSpec::Rational,
            "quadratic" => BaseSpec::Quadratic(k_disc),
            other => return Err(Error::Config(format!("unknown base '{other}' (integers, rational, quadratic)"))),
        };
        let t_kind = match self.t_kind.as_deref().unwrap_or("poly") {
            "poly" => TKind::Poly,
            "local" => TKind::Local,
            other => return Err(Error::Config(format!("unknown t_kind '{other}' (poly, local)"))),
        };
        make_instance(&InstanceConfig { name: None, base, k_disc, t_kind })
    }

    pub fn params(&self) -> SampleParams {
        let mut p = SampleParams::default();
        p.seed = self.seed.unwrap_or(p.seed);
        p.count = self.count.unwrap_or(p.count);
        p.max_gens = self.max_gens.unwrap_or(p.max_gens);
        p.max_degree = self.max_degree.unwrap_or(p.max_degree);
        p.height = self.height.unwrap_or(p.height);
        p.window.degree = self.window_degree.unwrap_or(p.window.degree);
        p.window.height = self.window_height.unwrap_or(p.window.height);
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_resolves() {
        let c = Config::parse("# comment\ninstance = C\nseed=7 # trailing\ncount = 20\n\njson = true\n").unwrap();
        assert_eq!(c.instance(), PullbackInstance::catalog("C"));
        let p = c.params();
        assert_eq!((p.seed, p.count, p.max_gens), (7, 20, 3));
        assert_eq!(c.json, Some(true));
    }

    #[test]
    fn explicit_fields() {
        let c = Config::parse("base = quadratic\nk_disc = -5\nt_kind = poly").unwrap();
        assert_eq!(c.instance().unwrap(), PullbackInstance::catalog("C").unwrap());
        let e = Config::parse("base = rational\nk_disc = -1\nt_kind = local").unwrap();
        assert_eq!(e.instance().unwrap(), PullbackInstance::catalog("E").unwrap());
    }

    #[test]
    fn errors() {
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("seed = -1").is_err());
        assert!(Config::parse("just text").is_err());
        assert!(Config::parse("instance = A\nbase = integers").unwrap().instance().is_err());
        assert!(Config::default().instance().is_err());
    }
}
