//! Run configuration: defaults, a flat key=value file, then flags.

use std::path::{Path, PathBuf};

use modsuper::error::{Error, Result};

pub const CACHE_ENV: &str = "MODSUPER_CACHE";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Usage(format!("unknown format {other}; expected json or csv"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExplicitValue {
    Int(i64),
    /// The nonzero c with λ^p − λ = c^p solvable, over F_{p^k}, k ≥ 2.
    Toral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChiSpec {
    Zero,
    NilRegular,
    SsRegular,
    Explicit(Vec<(String, ExplicitValue)>),
    /// Jordan types of the nilpotent element on V_0 and V_1.
    Partitions(Vec<usize>, Vec<usize>),
}

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    let mut parts = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Usage(format!("bad partition part {t:?}"))))
        .collect::<Result<Vec<usize>>>()?;
    if parts.contains(&0) {
        return Err(Error::Usage("partition parts must be positive".into()));
    }
    parts.sort_by(|a, b| b.cmp(a));
    Ok(parts)
}

impl std::str::FromStr for ChiSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<ChiSpec> {
        let s = s.trim();
        match s {
            "zero" => return Ok(ChiSpec::Zero),
            "nilregular" => return Ok(ChiSpec::NilRegular),
            "ssregular" => return Ok(ChiSpec::SsRegular),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("explicit:") {
            let mut out = Vec::new();
            for item in rest.split(';').map(str::trim).filter(|t| !t.is_empty()) {
                let (label, val) = item.split_once('=').ok_or_else(|| Error::Usage(format!("expected label=value, got {item:?}")))?;
                let val = match val.trim() {
                    "t" => ExplicitValue::Toral,
                    v => ExplicitValue::Int(v.parse().map_err(|_| Error::Usage(format!("bad value {v:?} for {label}")))?),
                };
                out.push((label.trim().to_string(), val));
            }
            return Ok(ChiSpec::Explicit(out));
        }
        if let Some(rest) = s.strip_prefix("partitions:") {
            let (a, b) = rest.split_once('/').unwrap_or((rest, ""));
            return Ok(ChiSpec::Partitions(parse_parts(a)?, parse_parts(b)?));
        }
        Err(Error::Usage(format!("unknown χ specification {s:?}")))
    }
}

impl std::fmt::Display for ChiSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            ChiSpec::Zero => write!(f, "zero"),
            ChiSpec::NilRegular => write!(f, "nilregular"),
            ChiSpec::SsRegular => write!(f, "ssregular"),
            ChiSpec::Explicit(items) => {
                let body: Vec<String> = items
                    .iter()
                    .map(|(l, v)| match v {
                        ExplicitValue::Int(n) => format!("{l}={n}"),
                        ExplicitValue::Toral => format!("{l}=t"),
                    })
                    .collect();
                write!(f, "explicit:{}", body.join(";"))
            }
            ChiSpec::Partitions(a, b) => write!(f, "partitions:{}/{}", join(a), join(b)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub p: u32,
    pub k: u32,
    pub family: String,
    pub dims: (usize, usize),
    pub chi: ChiSpec,
    pub seed: u64,
    pub dim_bound: usize,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig { p: 3, k: 1, family: "osp12".into(), dims: (1, 2), chi: ChiSpec::Zero, seed: 1, dim_bound: modsuper::pbw::DEFAULT_DIM_BOUND, cache_dir: None, format: Format::Json }
    }
}

/// Values that may come from the config file or the command line.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub p: Option<u32>,
    pub k: Option<u32>,
    pub family: Option<String>,
    pub dims: Option<(usize, usize)>,
    pub chi: Option<ChiSpec>,
    pub seed: Option<u64>,
    pub dim_bound: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub format: Option<Format>,
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| Error::Usage(format!("bad value {v:?} for {key}")))
}

fn parse_dims(v: &str) -> Result<(usize, usize)> {
    let t: Vec<&str> = v.split(|c: char| c == ',' || c == '|' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
    match t.as_slice() {
        [m, n] => Ok((parse_num("dims", m)?, parse_num("dims", n)?)),
        _ => Err(Error::Usage(format!("dims needs two numbers, got {v:?}"))),
    }
}

impl Overrides {
    /// Flat `key = value` lines; `#` starts a comment line and section
    /// headers are ignored.
    pub fn from_ini(text: &str) -> Result<Overrides> {
        let mut o = Overrides::default();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || (line.starts_with('[') && line.ends_with(']')) {
                continue;
            }
            let (key, val) = line.split_once('=').ok_or_else(|| Error::Usage(format!("config line {}: expected key = value", no + 1)))?;
            let val = val.trim();
            match key.trim().replace('-', "_").as_str() {
                "p" => o.p = Some(parse_num("p", val)?),
                "k" => o.k = Some(parse_num("k", val)?),
                "family" => o.family = Some(val.to_string()),
                "dims" => o.dims = Some(parse_dims(val)?),
                "chi" => o.chi = Some(val.parse()?),
                "seed" => o.seed = Some(parse_num("seed", val)?),
                "dim_bound" => o.dim_bound = Some(parse_num("dim_bound", val)?),
                "cache" | "cache_dir" => o.cache_dir = Some(PathBuf::from(val)),
                "format" => o.format = Some(val.parse()?),
                other => return Err(Error::Usage(format!("config line {}: unknown key {other}", no + 1))),
            }
        }
        Ok(o)
    }

    pub fn from_file(path: &Path) -> Result<Overrides> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Overrides::from_ini(&text)
    }

    pub fn apply(&self, cfg: &mut RunConfig) {
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = &self.$f { cfg.$f = v.clone(); } )* };
        }
        take!(p, k, family, dims, chi, seed, dim_bound, format);
        if let Some(c) = &self.cache_dir {
            cfg.cache_dir = Some(c.clone());
        }
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl RunConfig {
    /// Defaults, then the config file, then flags; the cache environment
    /// variable overrides both.
    pub fn resolve(file: Option<&Overrides>, flags: &Overrides, env_cache: Option<PathBuf>) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(f) = file {
            f.apply(&mut cfg);
        }
        flags.apply(&mut cfg);
        if let Some(c) = env_cache {
            cfg.cache_dir = Some(c);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 2 || !is_prime(self.p) {
            return Err(Error::Usage(format!("p = {} is not an odd prime", self.p)));
        }
        if self.k == 0 {
            return Err(Error::Usage("k must be at least 1".into()));
        }
        if let ChiSpec::Partitions(a, b) = &self.chi {
            if a.iter().sum::<usize>() != self.dims.0 || b.iter().sum::<usize>() != self.dims.1 {
                return Err(Error::Usage(format!("partitions of {} and {} expected for dims {} {}", self.dims.0, self.dims.1, self.dims.0, self.dims.1)));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p,
            "k": self.k,
            "family": self.family,
            "dims": [self.dims.0, self.dims.1],
            "chi": self.chi.to_string(),
            "seed": self.seed,
            "dim_bound": self.dim_bound,
        })
    }
}
