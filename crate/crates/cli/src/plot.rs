//! Plot-script emission: a standalone matplotlib script per recognized CSV
//! schema. The script is written, never executed.

use std::path::Path;

use crate::CliError;

const SCHEME_RUN_HEADER: &str = "input,n,error_norm,image_norm,lower_opnorm,upper_opnorm,tag";
const LEBESGUE_HEADER: &str = "n,lebesgue_constant";
const NORMS_HEADER: &str = "n,monomial_norm";

pub fn script_for(csv_path: &Path, text: &str) -> Result<String, CliError> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("").trim();
    let has_rows = lines.any(|l| !l.trim().is_empty());
    let path = csv_path.display().to_string();

    if header.is_empty() || !has_rows {
        return Ok(empty_plot_script(&path));
    }
    match header {
        SCHEME_RUN_HEADER => Ok(scheme_run_script(&path)),
        LEBESGUE_HEADER => Ok(lebesgue_script(&path)),
        NORMS_HEADER => Ok(norms_script(&path)),
        other => Err(CliError::Config(format!(
            "unrecognized CSV schema: header `{other}`"
        ))),
    }
}

fn preamble(path: &str) -> String {
    format!(
        "#!/usr/bin/env python3\n\
         import csv\n\
         import matplotlib\n\
         matplotlib.use(\"Agg\")\n\
         import matplotlib.pyplot as plt\n\
         \n\
         CSV_PATH = {path:?}\n\
         \n\
         def read_rows():\n\
         \x20   with open(CSV_PATH, newline=\"\") as fh:\n\
         \x20       return list(csv.DictReader(fh))\n\
         \n"
    )
}

fn empty_plot_script(path: &str) -> String {
    let mut s = preamble(path);
    s.push_str(
        "# warning: the CSV carried no data rows; emitting an empty plot\n\
         fig, ax = plt.subplots()\n\
         ax.set_title(\"no data\")\n\
         fig.savefig(\"plot.png\", dpi=150)\n\
         print(\"wrote plot.png (empty)\")\n",
    );
    s
}

fn scheme_run_script(path: &str) -> String {
    let mut s = preamble(path);
    s.push_str(
        "rows = read_rows()\n\
         inputs = []\n\
         for row in rows:\n\
         \x20   if row[\"input\"] not in inputs:\n\
         \x20       inputs.append(row[\"input\"])\n\
         fig, (ax_err, ax_img) = plt.subplots(1, 2, figsize=(11, 4.5))\n\
         for name in inputs:\n\
         \x20   ns = [int(r[\"n\"]) for r in rows if r[\"input\"] == name]\n\
         \x20   errs = [float(r[\"error_norm\"]) for r in rows if r[\"input\"] == name]\n\
         \x20   imgs = [float(r[\"image_norm\"]) for r in rows if r[\"input\"] == name]\n\
         \x20   tag = next(r[\"tag\"] for r in rows if r[\"input\"] == name)\n\
         \x20   ax_err.semilogy(ns, [max(e, 1e-17) for e in errs], label=f\"{name} [{tag}]\")\n\
         \x20   ax_img.plot(ns, imgs, label=name)\n\
         ax_err.set_xlabel(\"n\")\n\
         ax_err.set_ylabel(\"error norm\")\n\
         ax_err.legend()\n\
         ax_img.set_xlabel(\"n\")\n\
         ax_img.set_ylabel(\"image norm\")\n\
         ax_img.legend()\n\
         fig.tight_layout()\n\
         fig.savefig(\"plot.png\", dpi=150)\n\
         print(\"wrote plot.png\")\n",
    );
    s
}

fn lebesgue_script(path: &str) -> String {
    let mut s = preamble(path);
    s.push_str(
        "rows = read_rows()\n\
         ns = [int(r[\"n\"]) for r in rows]\n\
         ls = [float(r[\"lebesgue_constant\"]) for r in rows]\n\
         fig, ax = plt.subplots()\n\
         ax.semilogx([n + 1 for n in ns], ls, marker=\"o\")\n\
         ax.set_xlabel(\"n + 1 (log scale)\")\n\
         ax.set_ylabel(\"Lebesgue constant\")\n\
         ax.set_title(\"partial-sum kernel L1 means\")\n\
         fig.savefig(\"plot.png\", dpi=150)\n\
         print(\"wrote plot.png\")\n",
    );
    s
}

fn norms_script(path: &str) -> String {
    let mut s = preamble(path);
    s.push_str(
        "rows = read_rows()\n\
         ns = [int(r[\"n\"]) for r in rows]\n\
         vs = [float(r[\"monomial_norm\"]) for r in rows]\n\
         fig, ax = plt.subplots()\n\
         ax.semilogy(ns, vs, marker=\".\")\n\
         ax.set_xlabel(\"n\")\n\
         ax.set_ylabel(\"monomial norm (log scale)\")\n\
         fig.savefig(\"plot.png\", dpi=150)\n\
         print(\"wrote plot.png\")\n",
    );
    s
}
