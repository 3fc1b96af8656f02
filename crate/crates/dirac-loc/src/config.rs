//! Run configuration: a TOML file with nested sections, plus flag
//! overrides. Every field has a default, so an empty file is valid.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use dirac_loc_core::observables::ConvolutionOperator;
use dirac_loc_core::{LocalizationLabel, MomentumProfile, MomentumState, SpinLabel, Vec3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::CartesianGrid;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub output_dir: PathBuf,
    pub profile: ProfileSpec,
    pub label: LabelSpec,
    pub grid: GridSpec,
    pub evolve: EvolveSpec,
    pub rn: RnSpec,
    pub overlap: OverlapSpec,
    /// Overrides of named check tolerances, see [`default_tolerances`].
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKindSpec {
    Gaussian,
    BoostedGaussian,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProfileSpec {
    pub kind: ProfileKindSpec,
    /// `σ_p` in units of `mc`.
    pub width: f64,
    /// Defaults to the label velocity.
    pub v_target: Option<[f64; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LabelSpec {
    pub a: [f64; 3],
    pub v: [f64; 3],
    pub spin: String,
    pub n: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    /// Points per axis; chosen per state when absent.
    pub points: Option<usize>,
    /// Box length in `λ_C`; chosen per state when absent.
    pub length: Option<f64>,
    pub r_max: f64,
    pub r_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvolveSpec {
    pub times: Vec<f64>,
    pub r0: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RnSpec {
    pub p: Vec<[f64; 3]>,
    /// `identity`, `alpha1`, `alpha2` or `alpha3`.
    pub q: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OverlapSpec {
    pub a_prime: [f64; 3],
    /// Defaults to the label's spin.
    pub spin_prime: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            output_dir: PathBuf::from("out"),
            profile: ProfileSpec::default(),
            label: LabelSpec::default(),
            grid: GridSpec::default(),
            evolve: EvolveSpec::default(),
            rn: RnSpec::default(),
            overlap: OverlapSpec::default(),
            tolerances: BTreeMap::new(),
        }
    }
}

impl Default for ProfileSpec {
    fn default() -> Self {
        ProfileSpec {
            kind: ProfileKindSpec::Gaussian,
            width: 1.0,
            v_target: None,
        }
    }
}

impl Default for LabelSpec {
    fn default() -> Self {
        LabelSpec {
            a: [0.0; 3],
            v: [0.0; 3],
            spin: "+1/2".into(),
            n: vec![5, 7, 10],
        }
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            points: None,
            length: None,
            r_max: 6.0,
            r_count: 601,
        }
    }
}

impl Default for EvolveSpec {
    fn default() -> Self {
        EvolveSpec {
            times: vec![0.0, 0.5, 1.0],
            r0: 3.0,
        }
    }
}

impl Default for RnSpec {
    fn default() -> Self {
        RnSpec {
            p: vec![[0.0; 3], [1.0, 0.0, 0.0], [0.0, 0.0, 2.0]],
            q: "identity".into(),
        }
    }
}

impl Default for OverlapSpec {
    fn default() -> Self {
        OverlapSpec {
            a_prime: [2.0, 0.0, 0.0],
            spin_prime: None,
        }
    }
}

/// Named tolerances of the `verify` checks and their default bounds.
pub fn default_tolerances() -> BTreeMap<String, f64> {
    [
        ("projector_idempotence", 1e-12),
        ("eigenspinor_residual", 1e-10),
        ("pryce_spin_residual", 1e-10),
        ("derivative_bound_violations", 0.0),
        ("profile_norm", 1e-8),
        ("profile_mean_direction", 1e-6),
        ("state_norm", 1e-6),
        ("rn_at_origin", 1e-8),
        ("rn_nonmonotone_steps", 0.0),
        ("velocity_identity", 1e-8),
        ("causality_margin", 1e-10),
        ("grid_norm", 1e-4),
        ("opposite_spin_overlap", 1e-10),
        ("overlap_nonmonotone_steps", 0.0),
        ("nr_oracle", 1e-6),
        ("velocity_addition", 1e-12),
        ("boost_composition", 1e-12),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

/// Command-line overrides applied on top of the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub output_dir: Option<PathBuf>,
    pub n: Option<Vec<u32>>,
    pub grid: Option<(usize, f64)>,
    pub tolerances: Vec<(String, f64)>,
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
        RunConfig::from_toml_str(&text)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(dir) = &o.output_dir {
            self.output_dir = dir.clone();
        }
        if let Some(n) = &o.n {
            self.label.n = n.clone();
        }
        if let Some((points, length)) = o.grid {
            self.grid.points = Some(points);
            self.grid.length = Some(length);
        }
        for (k, v) in &o.tolerances {
            self.tolerances.insert(k.clone(), *v);
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.label.n.is_empty() {
            return Err(Error::config("label.n must list at least one sequence index"));
        }
        if self.label.n.contains(&0) {
            return Err(Error::config("sequence indices must be at least 1"));
        }
        let known = default_tolerances();
        for (k, v) in &self.tolerances {
            if !known.contains_key(k) {
                return Err(Error::config(format!("unknown tolerance name '{k}'")));
            }
            if !(*v >= 0.0) || !v.is_finite() {
                return Err(Error::config(format!(
                    "tolerance '{k}' must be finite and nonnegative, got {v}"
                )));
            }
        }
        if self.grid.points.is_some() != self.grid.length.is_some() {
            return Err(Error::config("grid.points and grid.length must be given together"));
        }
        if let (Some(p), Some(l)) = (self.grid.points, self.grid.length) {
            CartesianGrid::new(p, l)?;
        }
        if !(self.grid.r_max > 0.0) || self.grid.r_count < 2 {
            return Err(Error::config("grid.r_max must be positive and grid.r_count at least 2"));
        }
        if self.evolve.times.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) || !(self.evolve.r0 >= 0.0) {
            return Err(Error::config("evolve.times and evolve.r0 must be nonnegative"));
        }
        self.spin()?;
        self.spin_prime()?;
        self.operator()?;
        self.profile()?;
        self.label(self.label.n[0])?;
        Ok(())
    }

    pub fn tolerance(&self, name: &str) -> f64 {
        self.tolerances
            .get(name)
            .copied()
            .or_else(|| default_tolerances().get(name).copied())
            .unwrap_or(0.0)
    }

    pub fn spin(&self) -> Result<SpinLabel> {
        SpinLabel::parse(&self.label.spin).ok_or_else(|| Error::config(format!("unknown spin '{}'", self.label.spin)))
    }

    pub fn spin_prime(&self) -> Result<SpinLabel> {
        match &self.overlap.spin_prime {
            Some(s) => SpinLabel::parse(s).ok_or_else(|| Error::config(format!("unknown spin '{s}'"))),
            None => self.spin(),
        }
    }

    pub fn operator(&self) -> Result<ConvolutionOperator> {
        ConvolutionOperator::parse(&self.rn.q).ok_or_else(|| Error::config(format!("unknown operator '{}'", self.rn.q)))
    }

    pub fn label(&self, n: u32) -> Result<LocalizationLabel> {
        LocalizationLabel::new(
            Vec3::from_array(self.label.a),
            Vec3::from_array(self.label.v),
            self.spin()?,
            n,
        )
        .map_err(|e| Error::config(e.to_string()))
    }

    pub fn profile(&self) -> Result<MomentumProfile> {
        let v = Vec3::from_array(self.profile.v_target.unwrap_or(self.label.v));
        let built = match self.profile.kind {
            ProfileKindSpec::Gaussian => {
                if v != Vec3::ZERO {
                    return Err(Error::config("a plain gaussian profile only realizes v = 0"));
                }
                MomentumProfile::gaussian(self.profile.width)
            }
            ProfileKindSpec::BoostedGaussian => MomentumProfile::boosted_gaussian(v, self.profile.width),
        };
        built.map_err(|e| Error::config(e.to_string()))
    }

    pub fn state(&self, n: u32) -> Result<MomentumState> {
        MomentumState::new(self.label(n)?, self.profile()?).map_err(|e| Error::config(e.to_string()))
    }

    /// The configured grid, or one chosen for `state`.
    pub fn grid_for(&self, state: &MomentumState) -> Result<CartesianGrid> {
        match (self.grid.points, self.grid.length) {
            (Some(p), Some(l)) => CartesianGrid::new(p, l),
            _ => CartesianGrid::auto_for(state),
        }
    }
}

/// `"5,7,10"`.
pub fn parse_n_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::config(format!("bad sequence index '{t}'")))
        })
        .collect()
}

/// `"128,16"`.
pub fn parse_grid(s: &str) -> Result<(usize, f64)> {
    let mut it = s.split(',');
    let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
        return Err(Error::config(format!("grid must be N,L, got '{s}'")));
    };
    let points = a
        .trim()
        .parse()
        .map_err(|_| Error::config(format!("bad grid size '{a}'")))?;
    let length = b
        .trim()
        .parse()
        .map_err(|_| Error::config(format!("bad box length '{b}'")))?;
    Ok((points, length))
}

/// `"name=1e-6"`.
pub fn parse_tolerance(s: &str) -> Result<(String, f64)> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| Error::config(format!("tolerance must be NAME=VAL, got '{s}'")))?;
    let v = v
        .trim()
        .parse()
        .map_err(|_| Error::config(format!("bad tolerance value '{v}'")))?;
    Ok((k.trim().to_string(), v))
}
