//! Library behind the `gwzeta` binary: table generation, support
//! descriptions for JSON output, golden-fixture parsing, and the
//! verification suites.

pub mod checks;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use gwzeta::a1zeta::{dlog_a1_zeta, elliptic_eps_class, EllipticCurveData};
use gwzeta::descend::{construct_descendible, hat_is_periodic_on_window, is_descendible};
use gwzeta::gwseries::{dlog_rationality_obstruction, parity_series_to_rational};
use gwzeta::powersum::CoeffVector;
use gwzeta::zetaparity::{
    f_exact, f_parity_profile, f_support_set, g_exact, g_parity_profile, g_support_set,
    period_bound, Ambient, ParityFunction, SupportSet,
};

/// Golden transcriptions of the published parity tables.
pub const TABLE_N1: &str = include_str!("../fixtures/table_n1.txt");
pub const TABLE_N2: &str = include_str!("../fixtures/table_n2.txt");
pub const TABLE_N3: &str = include_str!("../fixtures/table_n3.txt");
pub const TABLE_ELLIPTIC: &str = include_str!("../fixtures/table_elliptic.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

/// A support set in transportable form: explicit bits for the preperiod,
/// then residues mod `period` (in 1..=period) for everything past it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportDescription {
    pub preperiod: Vec<u8>,
    pub period: usize,
    pub residues: Vec<u64>,
}

impl SupportDescription {
    pub fn from_set(s: &SupportSet) -> Self {
        let ind = s.indicator();
        let m = ind.preperiod_len();
        let n = ind.period_len() as u64;
        let mut residues: Vec<u64> = (0..n)
            .filter_map(|idx| {
                let at = m as u64 + 1 + idx;
                (ind.value(at) == 1).then_some((at - 1) % n + 1)
            })
            .collect();
        residues.sort_unstable();
        SupportDescription {
            preperiod: ind.preperiod_bits().to_vec(),
            period: n as usize,
            residues,
        }
    }

    pub fn to_set(&self) -> SupportSet {
        let m = self.preperiod.len() as u64;
        let n = self.period as u64;
        let per: Vec<u8> = (0..n)
            .map(|idx| u8::from(self.residues.contains(&((m + idx) % n + 1))))
            .collect();
        SupportSet::from_indicator(ParityFunction::from_parts(self.preperiod.clone(), per))
    }
}

/// One analyzed coefficient vector, in the JSON schema emitted by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub coeffs: Vec<i64>,
    #[serde(rename = "F_support")]
    pub f_support: SupportDescription,
    #[serde(rename = "G_support")]
    pub g_support: SupportDescription,
    pub bound_ok: bool,
}

pub struct TableRow {
    pub coeffs: Vec<i64>,
    pub g_support: SupportSet,
    pub f_support: SupportSet,
}

/// All coefficient vectors in {0,…,3}ⁿ, lexicographic (last component
/// fastest), matching the published row order.
pub fn coefficient_grid(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::with_capacity(4usize.pow(n as u32));
    let mut cur = vec![0i64; n];
    loop {
        out.push(cur.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < 3 {
                cur[i] += 1;
                cur[i + 1..].fill(0);
                break;
            }
        }
    }
}

/// Whether the parity profiles of `a` sit inside the proven period bounds:
/// the F-profile (of even arguments, indexed by half) has period and
/// preperiod at most 2ⁿ−1, the G-profile at most twice that, and an odd
/// trailing coefficient forces both preperiods empty.
pub fn bounds_hold(a: &CoeffVector) -> bool {
    let pb = period_bound(a.n());
    let f = f_parity_profile(a);
    let g = g_parity_profile(a);
    let mut ok = f.period_len() <= pb
        && f.preperiod_len() <= pb
        && g.period_len() <= 2 * pb
        && g.preperiod_len() <= 2 * pb;
    if a.coeff(a.n()).is_odd() {
        ok = ok && f.preperiod_len() == 0 && g.preperiod_len() == 0;
    }
    ok
}

pub fn compute_table(n: usize) -> Vec<TableRow> {
    coefficient_grid(n)
        .into_iter()
        .map(|coeffs| {
            let a = CoeffVector::from_i64(&coeffs);
            TableRow {
                coeffs,
                g_support: g_support_set(&a),
                f_support: f_support_set(&a),
            }
        })
        .collect()
}

pub fn profile_report(coeffs: &[i64]) -> ProfileReport {
    let a = CoeffVector::from_i64(coeffs);
    ProfileReport {
        coeffs: coeffs.to_vec(),
        f_support: SupportDescription::from_set(&f_support_set(&a)),
        g_support: SupportDescription::from_set(&g_support_set(&a)),
        bound_ok: bounds_hold(&a),
    }
}

fn coeff_label(coeffs: &[i64]) -> String {
    coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn rows_to_text(rows: &[TableRow]) -> String {
    let mut out = String::from("a | Supp{G(m,a) mod 2} | Supp{F(2m,a) mod 2}\n");
    for row in rows {
        out.push_str(&format!(
            "{} | {} | {}\n",
            coeff_label(&row.coeffs),
            row.g_support,
            row.f_support
        ));
    }
    out
}

fn rows_to_csv(rows: &[TableRow], n: usize) -> String {
    let mut header: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    header.push("F_support".into());
    header.push("G_support".into());
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let mut cells: Vec<String> = row.coeffs.iter().map(|c| c.to_string()).collect();
        cells.push(csv_quote(&row.f_support.to_string()));
        cells.push(csv_quote(&row.g_support.to_string()));
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn rows_to_json(rows: &[TableRow]) -> String {
    let reports: Vec<ProfileReport> = rows.iter().map(|r| profile_report(&r.coeffs)).collect();
    let mut out = serde_json::to_string(&reports).expect("table serialization cannot fail");
    out.push('\n');
    out
}

/// `tables` command: regenerate the parity tables for degree n.
pub fn cmd_tables(n: usize, format: OutputFormat) -> Result<String, String> {
    if n == 0 || n > 4 {
        return Err(format!("n = {n} is out of range: the sweep supports 1..=4"));
    }
    let rows = compute_table(n);
    Ok(match format {
        OutputFormat::Text => rows_to_text(&rows),
        OutputFormat::Csv => rows_to_csv(&rows, n),
        OutputFormat::Json => rows_to_json(&rows),
    })
}

/// `profile` command: analyze one coefficient vector.
pub fn cmd_profile(coeffs: &[i64], exact: bool, format: OutputFormat) -> Result<String, String> {
    if coeffs.is_empty() {
        return Err("need at least one coefficient".into());
    }
    if coeffs.len() > 8 {
        return Err("profiles are limited to degree 8".into());
    }
    let a = CoeffVector::from_i64(coeffs);
    match format {
        OutputFormat::Json => {
            let mut out =
                serde_json::to_string(&profile_report(coeffs)).expect("profile serialization");
            out.push('\n');
            Ok(out)
        }
        OutputFormat::Csv => {
            let rows = vec![TableRow {
                coeffs: coeffs.to_vec(),
                g_support: g_support_set(&a),
                f_support: f_support_set(&a),
            }];
            Ok(rows_to_csv(&rows, coeffs.len()))
        }
        OutputFormat::Text => {
            let mut out = format!("a = ({})\n", coeff_label(coeffs));
            out.push_str(&format!("Supp{{G(m,a) mod 2}} = {}\n", g_support_set(&a)));
            out.push_str(&format!("Supp{{F(2m,a) mod 2}} = {}\n", f_support_set(&a)));
            out.push_str(&format!(
                "period bounds: {}\n",
                if bounds_hold(&a) { "ok" } else { "VIOLATED" }
            ));
            if exact {
                out.push_str("m : F(m,a) : G(m,a)\n");
                for m in 1..=24u64 {
                    out.push_str(&format!("{m} : {} : {}\n", f_exact(&a, m), g_exact(&a, m)));
                }
            }
            Ok(out)
        }
    }
}

/// `curve` command: analyze an elliptic curve Y² = X³ + AX + B over F_p.
pub fn cmd_curve(p: u64, a: i64, b: i64, k: usize) -> Result<String, String> {
    if k < 12 {
        return Err(format!("K = {k} is too small; the truncation must be at least 12"));
    }
    let e = EllipticCurveData::new(p, a, b)?;
    let mut model = e.model();
    let z = dlog_a1_zeta(&mut model, k);
    let class = elliptic_eps_class(e.trace.rem_euclid(4) as u64, p % 4);
    // The mod-4 classification must reproduce the series coefficients.
    for (idx, &bit) in z.h.iter().enumerate() {
        let m = idx as u64 + 1;
        assert_eq!(
            bit == 1,
            class.contains(m),
            "classified support disagrees with the zeta series at m = {m}"
        );
    }
    let form = parity_series_to_rational(class.indicator());
    let obstructed = dlog_rationality_obstruction(&z);

    let mut out = format!("E: Y^2 = X^3 + {a}X + {b} over F_{p}\n");
    out.push_str(&format!("#E(F_{p}) = {}\n", e.points));
    out.push_str(&format!("trace of Frobenius a = {}\n", e.trace));
    out.push_str(&format!(
        "class (a mod 4, q mod 4) = ({}, {})\n",
        e.trace.rem_euclid(4),
        p % 4
    ));
    out.push_str(&format!("eps-part support (even m) = {class}\n"));
    out.push_str(&format!("eps-part rational form = {form}\n"));
    out.push_str(&format!(
        "dlog rationality: {}\n",
        if obstructed {
            "obstructed (t vs t^3 parity differs; not dlog rational)"
        } else {
            "not obstructed"
        }
    ));
    Ok(out)
}

/// `descend` command: with S₀ ⊆ [1,N], construct the descendible completion;
/// with a full support in [1,2N], check descendibility.
pub fn cmd_descend(supp: &[u64], n: u64) -> Result<String, String> {
    if n == 0 {
        return Err("N must be positive".into());
    }
    if let Some(&bad) = supp.iter().find(|&&x| x == 0 || x > 2 * n) {
        return Err(format!("support element {bad} is outside [1, 2N] = [1, {}]", 2 * n));
    }
    let mut sorted = supp.to_vec();
    sorted.sort_unstable();
    sorted.dedup();

    let (h, constructed) = if sorted.iter().all(|&x| x <= n) {
        (construct_descendible(&sorted, n), true)
    } else {
        let mut bits = vec![0u8; 2 * n as usize];
        for &x in &sorted {
            bits[x as usize - 1] = 1;
        }
        (ParityFunction::from_parts(vec![], bits), false)
    };
    let cert = is_descendible(&h, n);
    let hat_periodic = hat_is_periodic_on_window(&h, n, 8 * n);

    let mut out = String::new();
    if constructed {
        out.push_str(&format!(
            "constructing the descendible 2N-periodic function with S0 = {{{}}}, N = {n}\n",
            sorted.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        ));
    } else {
        out.push_str(&format!(
            "checking the 2N-periodic function with support {{{}}} on [1,{}], N = {n}\n",
            sorted.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            2 * n
        ));
    }
    let bits: Vec<String> =
        (1..=2 * n).map(|m| h.value(m).to_string()).collect();
    out.push_str(&format!("h on [1,2N]: {}\n", bits.join(",")));
    out.push_str(&format!(
        "S0 = {{{}}}\n",
        cert.s0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    ));
    out.push_str(&format!(
        "S1 = {{{}}}\n",
        cert.s1.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    ));
    out.push_str(&format!(
        "T = {{{}}}\n",
        cert.t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    ));
    out.push_str(&format!("descendible: {}\n", if cert.descendible { "yes" } else { "no" }));
    out.push_str(&format!(
        "hat 2N-periodic: {}\n",
        if hat_periodic { "yes" } else { "no" }
    ));
    Ok(out)
}

/// A parsed golden-table row.
pub struct FixtureRow {
    pub coeffs: Vec<i64>,
    pub g_support: SupportSet,
    pub f_support: SupportSet,
}

/// Parses a golden table: `a1,..,an | G-support | F-support` per line, `#`
/// comments. The G column lives in the naturals, the F column in the even
/// naturals (its entries are the even arguments 2m).
pub fn parse_table_fixture(text: &str) -> Result<Vec<FixtureRow>, String> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split('|').collect();
        if parts.len() != 3 {
            return Err(format!("fixture line {}: expected 3 columns", lineno + 1));
        }
        let coeffs = parts[0]
            .trim()
            .split(',')
            .map(|c| c.trim().parse::<i64>().map_err(|e| format!("line {}: {e}", lineno + 1)))
            .collect::<Result<Vec<i64>, String>>()?;
        rows.push(FixtureRow {
            coeffs,
            g_support: SupportSet::parse(parts[1], Ambient::Naturals)?,
            f_support: SupportSet::parse(parts[2], Ambient::EvenNaturals)?,
        });
    }
    Ok(rows)
}

/// An `((a mod 4, q mod 4), support)` row of the elliptic classification.
pub type EllipticClassRow = ((u64, u64), SupportSet);

/// Parses the elliptic classification fixture: `a,q | support`.
pub fn parse_elliptic_fixture(text: &str) -> Result<Vec<EllipticClassRow>, String> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split('|').collect();
        if parts.len() != 2 {
            return Err(format!("fixture line {}: expected 2 columns", lineno + 1));
        }
        let pair: Vec<u64> = parts[0]
            .trim()
            .split(',')
            .map(|c| c.trim().parse::<u64>().map_err(|e| format!("line {}: {e}", lineno + 1)))
            .collect::<Result<Vec<u64>, String>>()?;
        if pair.len() != 2 {
            return Err(format!("fixture line {}: expected a,q", lineno + 1));
        }
        rows.push((
            (pair[0], pair[1]),
            SupportSet::parse(parts[1], Ambient::EvenNaturals)?,
        ));
    }
    Ok(rows)
}

/// One verification suite run: named checks with pass/fail and detail.
pub struct SuiteRun {
    pub name: String,
    pub results: Vec<(String, Result<String, String>)>,
}

impl SuiteRun {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|(_, r)| r.is_ok())
    }

    pub fn render(&self) -> String {
        let mut out = format!("suite: {}\n", self.name);
        for (label, result) in &self.results {
            match result {
                Ok(detail) => out.push_str(&format!("[PASS] {label}: {detail}\n")),
                Err(err) => out.push_str(&format!("[FAIL] {label}: {err}\n")),
            }
        }
        out.push_str(if self.passed() { "all checks passed\n" } else { "FAILURES above\n" });
        out
    }
}

type Check = (&'static str, Box<dyn Fn() -> Result<String, String>>);

fn catching(
    f: impl FnOnce() -> Result<String, String> + std::panic::UnwindSafe,
) -> Result<String, String> {
    match std::panic::catch_unwind(f) {
        Ok(r) => r,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic with non-string payload".into());
            Err(format!("panicked: {msg}"))
        }
    }
}

/// Runs one named verification suite. Suite names: congruences, oracle,
/// periods, descend, tables, zeta.
pub fn run_suite(name: &str) -> Result<SuiteRun, String> {
    let checks: Vec<Check> = match name {
        "congruences" => vec![
            ("binomial p-scaling", Box::new(checks::binom_scaling_sweep)),
            ("binomial dyadic periodicity", Box::new(checks::binom_period2_sweep)),
            ("factorial-ratio defect integrality", Box::new(checks::defect_integrality_sweep)),
            ("power-sum Fermat congruence", Box::new(checks::fermat_sweep)),
        ],
        "oracle" => vec![
            ("Newton vs multinomial power sums", Box::new(checks::oracle_grid)),
            ("F and G integrality sweep", Box::new(checks::integrality_sweep)),
        ],
        "periods" => vec![
            ("profile period bounds", Box::new(checks::period_bounds_grid)),
            ("mod-4 invariance of F parity", Box::new(checks::mod4_invariance)),
        ],
        "descend" => vec![
            ("hat-periodicity equals descendibility", Box::new(checks::descend_equivalence)),
            ("G-profiles descend within bounds", Box::new(checks::g_profiles_descend)),
            ("4-periodic hat classification", Box::new(checks::four_periodic_enumeration)),
        ],
        "tables" => vec![
            ("table n=1", Box::new(|| checks::tables_match_fixture(1))),
            ("table n=2", Box::new(|| checks::tables_match_fixture(2))),
            ("table n=3", Box::new(|| checks::tables_match_fixture(3))),
            ("elliptic classification table", Box::new(checks::elliptic_table_matches)),
        ],
        "zeta" => vec![
            ("projective point counts", Box::new(checks::naive_counts_spotcheck)),
            ("worked curve with rational dlog zeta", Box::new(checks::example_curve_rational)),
            ("worked curve with obstructed dlog zeta", Box::new(checks::example_curve_obstructed)),
            ("zeta route agreement across Hasse range", Box::new(checks::zeta_routes_sweep)),
            ("series identity for the worked example", Box::new(checks::example_identity_check)),
        ],
        other => {
            return Err(format!(
                "unknown suite {other:?}; expected one of congruences, oracle, periods, descend, tables, zeta"
            ))
        }
    };
    // A failing assertion deep inside a check is reported as a normal
    // failure line; keep the default hook from spraying a backtrace.
    let hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let results = checks
        .into_iter()
        .map(|(label, f)| {
            (label.to_string(), catching(std::panic::AssertUnwindSafe(&f)))
        })
        .collect();
    std::panic::set_hook(hook);
    Ok(SuiteRun { name: name.to_string(), results })
}
