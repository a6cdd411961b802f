//! Machine-readable reports and their plain-text rendering.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub weight: usize,
    pub chain_dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check { name: name.into(), passed, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Dimensions of a (co)homology computation plus every check made on the
/// way. `rank_out` is the rank of the differential leaving the weight,
/// `rank_in` of the one arriving.
#[derive(Debug, Clone, Serialize)]
pub struct BettiReport {
    pub tool: String,
    pub command: String,
    pub theory: String,
    pub input: String,
    pub module: String,
    pub max_weight: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Row>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
    pub passed: bool,
}

impl BettiReport {
    pub fn new(command: &str, theory: &str, input: &str, module: &str, max_weight: usize) -> Self {
        BettiReport {
            tool: format!("hoalg {}", env!("CARGO_PKG_VERSION")),
            command: command.into(),
            theory: theory.into(),
            input: input.into(),
            module: module.into(),
            max_weight,
            rows: Vec::new(),
            checks: Vec::new(),
            summary: None,
            passed: true,
        }
    }

    pub fn push_check(&mut self, c: Check) {
        self.passed &= c.passed;
        self.checks.push(c);
    }

    pub fn dims(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.dim).collect()
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("{} {} of {} (module: {})\n", self.theory, self.command, self.input, self.module);
        if !self.rows.is_empty() {
            let header = ["weight", "dim C", "rank in", "rank out", "dim H"];
            let cells: Vec<[String; 5]> = self
                .rows
                .iter()
                .map(|r| {
                    [r.weight, r.chain_dim, r.rank_in, r.rank_out, r.dim].map(|x| x.to_string())
                })
                .collect();
            out.push_str(&aligned(&header, &cells));
        }
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            match &c.detail {
                Some(d) => out.push_str(&format!("{mark} {} ({d})\n", c.name)),
                None => out.push_str(&format!("{mark} {}\n", c.name)),
            }
        }
        if let Some(s) = &self.summary {
            out.push_str(s);
            out.push('\n');
        }
        out.push_str(if self.passed { "all checks passed\n" } else { "some checks FAILED\n" });
        out
    }
}

/// Right-aligned columns under a header and a rule.
pub fn aligned<const N: usize>(header: &[&str; N], rows: &[[String; N]]) -> String {
    let mut widths = header.map(|h| h.chars().count());
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    out.push_str(&line(widths.iter().map(|&w| "-".repeat(w)).collect()));
    for r in rows {
        out.push_str(&line(r.to_vec()));
    }
    out
}
