//! Subcommand implementations.

use std::path::{Path, PathBuf};

use diskapprox::descriptor::SpaceDescriptor;
use diskapprox::diagnostics::{divergence_trend, lebesgue_constant, scheme_norm_estimate};
use diskapprox::embedding::{
    inclusion_constant, isometry_spot_check, membership_beyond_disk, verify_inclusion_bound,
};
use diskapprox::Error;

use crate::config::{self, EmbedConfig, NormsConfig, SchemeRunConfig};
use crate::csv_out::{format_float, output_path, CsvWriter};
use crate::plot;
use crate::CliError;

fn config_path(config: Option<&Path>) -> Result<&Path, CliError> {
    config.ok_or_else(|| CliError::Config("missing --config PATH".into()))
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent()
        .filter(|p| !p.as_os_str().is_empty())
        .map(|p| p.to_path_buf())
        .unwrap_or_else(|| PathBuf::from("."))
}

pub fn norms(
    config: Option<&Path>,
    output: Option<PathBuf>,
    horizon: usize,
) -> Result<(), CliError> {
    let path = config_path(config)?;
    let cfg: NormsConfig = config::load(path)?;
    let space = cfg.space.build(horizon).map_err(config_error)?;
    if cfg.n_max > space.horizon() {
        return Err(CliError::Config(format!(
            "field `n_max` ({}) exceeds the space horizon ({})",
            cfg.n_max,
            space.horizon()
        )));
    }
    let norms = space.monomial_norms(cfg.n_max).map_err(CliError::runtime)?;
    let mut csv = CsvWriter::new(&["n", "monomial_norm"]);
    for (n, value) in norms.iter().enumerate() {
        csv.row(&[n.to_string(), format_float(*value)]);
    }
    csv.write_to(&output_path(output, cfg.output)?)
}

pub fn scheme_run(
    config: Option<&Path>,
    seed: Option<u64>,
    output: Option<PathBuf>,
    horizon: usize,
) -> Result<(), CliError> {
    let path = config_path(config)?;
    let cfg: SchemeRunConfig = config::load(path)?;
    let space = cfg.space.build(horizon).map_err(config_error)?;
    if cfg.n_max > space.horizon() {
        return Err(CliError::Config(format!(
            "field `n_max` ({}) exceeds the space horizon ({})",
            cfg.n_max,
            space.horizon()
        )));
    }
    let scheme = cfg
        .scheme
        .build(&space, cfg.n_max + 1, &base_dir(path))?;
    if cfg.inputs.is_empty() {
        return Err(CliError::Config("field `inputs` must be nonempty".into()));
    }
    let seed = seed.or(cfg.seed).unwrap_or(0);

    // operator-norm estimates are input-independent: compute once per n
    let opnorms: Vec<(String, String)> = if cfg.opnorm_trials > 0 {
        (0..=cfg.n_max)
            .map(|n| {
                let est = scheme_norm_estimate(&scheme, &space, n, cfg.opnorm_trials, seed)
                    .map_err(CliError::runtime)?;
                Ok((
                    format_float(est.lower),
                    est.upper.map(format_float).unwrap_or_default(),
                ))
            })
            .collect::<Result<_, CliError>>()?
    } else {
        vec![(String::new(), String::new()); cfg.n_max + 1]
    };

    let mut csv = CsvWriter::new(&[
        "input",
        "n",
        "error_norm",
        "image_norm",
        "lower_opnorm",
        "upper_opnorm",
        "tag",
    ]);
    for (index, input) in cfg.inputs.iter().enumerate() {
        let f = input.build(space.horizon())?;
        let trend =
            divergence_trend(&space, &scheme, &f, cfg.n_max).map_err(CliError::runtime)?;
        let label = input.label(index);
        for report in &trend.reports {
            let (lower, upper) = opnorms[report.n].clone();
            csv.row(&[
                label.clone(),
                report.n.to_string(),
                format_float(report.error_norm),
                format_float(report.image_norm),
                lower,
                upper,
                trend.tag.as_str().to_string(),
            ]);
        }
    }
    csv.write_to(&output_path(output, cfg.output)?)
}

pub fn lebesgue(
    n_list: &[usize],
    quadrature_points: usize,
    output: Option<PathBuf>,
) -> Result<(), CliError> {
    let mut csv = CsvWriter::new(&["n", "lebesgue_constant"]);
    for &n in n_list {
        let points = if quadrature_points == 0 {
            64 * (n + 1)
        } else {
            quadrature_points
        };
        let value = lebesgue_constant::<f64>(n, points).map_err(CliError::runtime)?;
        csv.row(&[n.to_string(), format_float(value)]);
    }
    csv.write_to(&output_path(output, None)?)
}

pub fn embed(
    config: Option<&Path>,
    seed: Option<u64>,
    output: Option<PathBuf>,
) -> Result<(), CliError> {
    let path = config_path(config)?;
    let cfg: EmbedConfig = config::load(path)?;
    let spec = cfg.spec.build().map_err(config_error)?;
    let seed = seed.or(cfg.seed).unwrap_or(0);

    let mut csv = CsvWriter::new(&["row_kind", "parameter", "value", "aux", "flag"]);

    for &r in &cfg.r_list {
        match inclusion_constant(&spec, r) {
            Ok(c_r) => csv.row(&[
                "inclusion_constant".into(),
                format_float(r),
                format_float(c_r.value),
                format_float(c_r.tail_bound),
                if c_r.tail_negligible {
                    "tail-negligible".into()
                } else {
                    "tail-small".into()
                },
            ]),
            Err(Error::TailNotControlled { tail, partial, .. }) => csv.row(&[
                "inclusion_constant".into(),
                format_float(r),
                format_float(partial),
                format_float(tail),
                "tail-not-controlled".into(),
            ]),
            Err(e) => return Err(CliError::runtime(e)),
        }
    }

    // isometry spot check on seeded random vectors
    let max_rel_err =
        isometry_spot_check(&spec, cfg.samples, seed).map_err(CliError::runtime)?;
    csv.row(&[
        "isometry_max_rel_err".into(),
        cfg.samples.to_string(),
        format_float(max_rel_err),
        String::new(),
        if max_rel_err <= 1e-10 { "ok" } else { "drift" }.into(),
    ]);

    for &r in &cfg.r_list {
        match verify_inclusion_bound(&spec, cfg.samples, r, seed) {
            Ok(report) => csv.row(&[
                "inclusion_ratio_max".into(),
                format_float(r),
                format_float(report.max_ratio),
                format_float(report.c_r),
                if report.bound_respected {
                    "respected".into()
                } else {
                    "exceeded".into()
                },
            ]),
            Err(Error::TailNotControlled { .. }) => csv.row(&[
                "inclusion_ratio_max".into(),
                format_float(r),
                String::new(),
                String::new(),
                "tail-not-controlled".into(),
            ]),
            Err(e) => return Err(CliError::runtime(e)),
        }
    }

    for target in &cfg.membership {
        let rule = target.rule.build()?;
        match membership_beyond_disk(&spec, &rule, target.radius) {
            Ok(report) => csv.row(&[
                "membership_bound".into(),
                target.rule.label(),
                format_float(report.bound),
                format_float(report.tail_bound),
                if report.tail_controlled {
                    "controlled".into()
                } else {
                    "uncontrolled".into()
                },
            ]),
            Err(Error::DivergentEvidence { increment }) => csv.row(&[
                "membership_bound".into(),
                target.rule.label(),
                String::new(),
                format_float(increment),
                "divergent-evidence".into(),
            ]),
            Err(e) => return Err(CliError::runtime(e)),
        }
    }

    csv.write_to(&output_path(output, cfg.output)?)
}

pub fn hb_gram(
    config: Option<&Path>,
    output: Option<PathBuf>,
    horizon: usize,
) -> Result<(), CliError> {
    let path = config_path(config)?;
    let descriptor: SpaceDescriptor<f64> = config::load(path)?;
    if !matches!(descriptor, SpaceDescriptor::Hb { .. }) {
        return Err(CliError::Config(
            "field `kind` must be \"hb\" for hb-gram".into(),
        ));
    }
    let space = descriptor.build(horizon).map_err(config_error)?;
    let export = SpaceDescriptor::from_space(&space);
    let json = serde_json::to_string_pretty(&export)
        .map_err(|e| CliError::Runtime(format!("serialization failed: {e}")))?;
    let out = output_path(output, None)?;
    std::fs::write(&out, json.as_bytes())
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", out.display())))
}

pub fn plot_script(csv: &Path, output: Option<PathBuf>) -> Result<(), CliError> {
    let text = std::fs::read_to_string(csv)
        .map_err(|e| CliError::Config(format!("cannot read CSV {}: {e}", csv.display())))?;
    let script = plot::script_for(csv, &text)?;
    let out = output_path(output, None)?;
    std::fs::write(&out, script.as_bytes())
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", out.display())))
}

/// Errors raised while constructing objects out of a config are config
/// errors: the file described something invalid.
fn config_error(e: Error) -> CliError {
    CliError::Config(e.to_string())
}
