use twodist::{
    delsarte_check, gram_check, independence_rank, k_max, lambda_params, lambda_set, profile,
    table, verify_two_distance, CandidateBuilder, GegenbauerExpansion, InnerProductPair,
    SearchConfig, CANDIDATES,
};

use crate::output::{Cell, Report};

/// How a command finished, mapped onto the process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
    Inconclusive,
}

/// Bad flags or arguments outside a command's domain; exit status 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<twodist::Error> for UsageError {
    fn from(e: twodist::Error) -> Self {
        UsageError(e.to_string())
    }
}

pub type CmdResult = Result<(Report, Outcome), UsageError>;

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub search: SearchConfig,
    pub seed: u64,
    pub strict: bool,
}

impl Settings {
    fn meta(&self) -> Vec<(&'static str, String)> {
        vec![
            ("grid", self.search.grid.to_string()),
            ("tol", format!("{:e}", self.search.tol)),
            ("seed", self.seed.to_string()),
            ("strict", self.strict.to_string()),
        ]
    }

    fn inconclusive(&self, found: bool) -> Outcome {
        if found && self.strict {
            Outcome::Inconclusive
        } else {
            Outcome::Success
        }
    }
}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn opt_int(v: Option<u64>) -> Cell {
    v.map_or(Cell::Text("inf".into()), Cell::Int)
}

pub fn cmd_table(s: &Settings, n_min: usize, n_max: usize) -> CmdResult {
    if !(7 <= n_min && n_min <= n_max && n_max <= 60) {
        return Err(usage(format!(
            "invalid range --n-min {n_min} --n-max {n_max}: need 7 <= n-min <= n-max <= 60"
        )));
    }
    let rows = table(n_min, n_max, &s.search)?;
    let mut report = Report::new(
        "table",
        vec!["n", "omega_hat", "rho", "k_star", "g_upper", "conclusive"],
    );
    report.meta = s.meta();
    let mut inconclusive = false;
    for r in rows {
        inconclusive |= !r.is_conclusive();
        report.rows.push(vec![
            Cell::Int(r.n as u64),
            opt_int(r.omega_hat),
            Cell::Int(r.rho),
            Cell::Int(r.k_star as u64),
            opt_int(r.g_upper),
            Cell::Bool(r.is_conclusive()),
        ]);
    }
    Ok((report, s.inconclusive(inconclusive)))
}

pub fn cmd_profile(s: &Settings, n: usize, k: usize, samples: usize) -> CmdResult {
    let kmax = k_max(n);
    if k < 2 || k > kmax {
        return Err(usage(format!(
            "k = {k} is outside 2..={kmax}; K~({n}) = {kmax}"
        )));
    }
    let points = profile(n, k, samples, s.search.tol)?;
    let mut report = Report::new("profile", vec!["a", "q", "winning_i"]);
    report.rows_key = "samples";
    report.meta = s.meta();
    report
        .meta
        .extend([("n", n.to_string()), ("k", k.to_string())]);
    let mut inconclusive = false;
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    for p in points {
        inconclusive |= p.q.is_infinite();
        if p.q > best.1 {
            best = (p.a, p.q);
        }
        let winners = if p.winners.is_empty() {
            Cell::Missing
        } else {
            Cell::Indices(p.winners)
        };
        report
            .rows
            .push(vec![Cell::Real(p.a), Cell::Real(p.q), winners]);
    }
    report.summary.push(("max_q", Cell::Real(best.1)));
    report.summary.push(("argmax_a", Cell::Real(best.0)));
    Ok((report, s.inconclusive(inconclusive)))
}

pub fn cmd_bound(s: &Settings, n: usize, a: f64, b: f64) -> CmdResult {
    let pair = InnerProductPair::new(n, a, b)?;
    let builder = CandidateBuilder::with_tol(pair.n(), s.search.tol)?;
    let mut report = Report::new(
        "bound",
        vec!["i", "in_domain", "c", "d", "f", "u", "failure"],
    );
    report.meta = s.meta();
    report.meta.extend([
        ("n", n.to_string()),
        ("a", a.to_string()),
        ("b", b.to_string()),
    ]);
    let mut values = Vec::new();
    for i in CANDIDATES {
        let c = builder.build(i, pair.a(), pair.b())?;
        values.push(c.value);
        report.rows.push(vec![
            Cell::Int(i as u64),
            Cell::Bool(c.in_domain),
            c.c.map_or(Cell::Missing, Cell::Real),
            c.d.map_or(Cell::Missing, Cell::Real),
            c.expansion
                .map_or(Cell::Missing, |e| Cell::Reals(e.coeffs().to_vec())),
            Cell::Real(c.value),
            c.failure
                .map_or(Cell::Missing, |f| Cell::Text(f.to_string())),
        ]);
    }
    let best = builder.best(pair.a(), pair.b());
    report.summary.push(("min", Cell::Real(best.value)));
    report
        .summary
        .push(("winners", Cell::Indices(best.winners.clone())));
    Ok((report, s.inconclusive(!best.is_finite())))
}

pub fn cmd_delsarte_check(
    s: &Settings,
    n: usize,
    coeffs: Vec<f64>,
    allowed: Vec<f64>,
) -> CmdResult {
    if let Some(t) = allowed.iter().find(|t| !(-1.0..1.0).contains(*t)) {
        return Err(usage(format!(
            "allowed inner product {t} is outside [-1, 1)"
        )));
    }
    let expansion = GegenbauerExpansion::new(n, coeffs)?;
    let mut report = Report::new("delsarte-check", vec!["n", "accepted", "bound", "reason"]);
    report.meta = s.meta();
    let (row, outcome) = match delsarte_check(&expansion, &allowed, s.search.tol) {
        Ok(bound) => (
            vec![
                Cell::Int(n as u64),
                Cell::Bool(true),
                Cell::Int(bound),
                Cell::Missing,
            ],
            Outcome::Success,
        ),
        Err(why) => (
            vec![
                Cell::Int(n as u64),
                Cell::Bool(false),
                Cell::Missing,
                Cell::Text(why.to_string()),
            ],
            Outcome::VerificationFailed,
        ),
    };
    report.rows.push(row);
    Ok((report, outcome))
}

pub fn cmd_verify_lambda(s: &Settings, n: usize) -> CmdResult {
    let set = lambda_set(n)?;
    let (ea, eb) = lambda_params(n)?;
    let cert = verify_two_distance(&set);
    let gram = gram_check(&set);
    let expected_points = n * (n + 1) / 2;
    let informational = n < 3;
    let pass = set.len() == expected_points
        && cert.valid
        && (cert.a - ea).abs() < 1e-10
        && (cert.b - eb).abs() < 1e-10
        && gram.psd
        && gram.rank == n;
    let mut report = Report::new(
        "verify-lambda",
        vec![
            "n",
            "points",
            "a",
            "b",
            "expected_a",
            "expected_b",
            "count_a",
            "count_b",
            "psd",
            "rank",
            "diagnostic",
            "pass",
        ],
    );
    report.meta = s.meta();
    let verdict = if informational {
        Cell::Text("informational".into())
    } else {
        Cell::Bool(pass)
    };
    report.rows.push(vec![
        Cell::Int(n as u64),
        Cell::Int(set.len() as u64),
        Cell::Real(cert.a),
        Cell::Real(cert.b),
        Cell::Real(ea),
        Cell::Real(eb),
        Cell::Int(cert.pair_counts.0 as u64),
        Cell::Int(cert.pair_counts.1 as u64),
        Cell::Bool(gram.psd),
        Cell::Int(gram.rank as u64),
        cert.diagnostic
            .map_or(Cell::Missing, |d| Cell::Text(d.to_string())),
        verdict,
    ]);
    let outcome = if pass || informational {
        Outcome::Success
    } else {
        Outcome::VerificationFailed
    };
    Ok((report, outcome))
}

pub fn cmd_independence(s: &Settings, n: usize) -> CmdResult {
    if n < 7 {
        return Err(usage(format!(
            "independence needs n >= 7 (a + b >= 0), got {n}"
        )));
    }
    let set = lambda_set(n)?;
    let (a, b) = lambda_params(n)?;
    let rank = independence_rank(&set, a, b, s.seed)?;
    let m = set.len();
    let expected = m + n;
    let pass = rank == expected;
    let mut report = Report::new("independence", vec!["n", "m", "rank", "expected", "pass"]);
    report.meta = s.meta();
    report.rows.push(vec![
        Cell::Int(n as u64),
        Cell::Int(m as u64),
        Cell::Int(rank as u64),
        Cell::Int(expected as u64),
        Cell::Bool(pass),
    ]);
    Ok((
        report,
        if pass {
            Outcome::Success
        } else {
            Outcome::VerificationFailed
        },
    ))
}
