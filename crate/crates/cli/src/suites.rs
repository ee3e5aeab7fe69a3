use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use racahkit_core::exact::{int, Param};
use racahkit_core::grammar::parse_scalar;
use racahkit_core::harmonics::{
    build_basis, eigenvalue_lambda, lowering, verify_ck, verify_diagonal, verify_dimension, verify_jacobi_explicit, BasisOrder,
};
use racahkit_core::racah::{verify_suite_timed, CheckLevel, RacahContext, Suite};
use racahkit_core::reduced::{all_pairs, verify_reduced};
use racahkit_core::su11::{make_realization_with, verify_su11};
use racahkit_core::transforms::{
    map_basis_laplace, miller_reduce, potential_coefficient_at, sphere_identity_check, verify_bargmann_explicit, verify_ck_commutation,
    verify_hyperplane, verify_intertwine,
};
use racahkit_core::{IdentityCheck, LaurentPoly, ModelKind, Rational, Specialization, Subset, VerificationReport};

use crate::args::{Cli, Command, Explicit, Model, Order, ReduceAction, SuiteArg, VerifyAction};
use crate::output::{BasisEntry, RunConfig, SuiteReport};
use crate::{CliError, DEFAULT_MAX_N};

type Timed = Vec<(VerificationReport, Duration)>;

fn timed(out: &mut Timed, f: impl FnOnce() -> racahkit_core::Result<VerificationReport>) -> Result<(), CliError> {
    let start = Instant::now();
    let r = f()?;
    out.push((r, start.elapsed()));
    Ok(())
}

fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn require_n(n: Option<usize>, min: usize) -> Result<usize, CliError> {
    let n = n.ok_or_else(|| config_error("missing parameter --n"))?;
    if n < min {
        return Err(config_error(format!("--n must be at least {min}, got {n}")));
    }
    Ok(n)
}

fn require_k(k: Option<u32>) -> Result<u32, CliError> {
    k.ok_or_else(|| config_error("missing parameter --k"))
}

fn models(m: Option<Model>) -> Vec<ModelKind> {
    match m {
        None => ModelKind::ALL.to_vec(),
        Some(Model::Bargmann) => vec![ModelKind::Bargmann],
        Some(Model::Bg) => vec![ModelKind::BarutGirardello],
    }
}

/// Parses `i=p/q` or `nui=p/q`.
fn parse_nu(entry: &str) -> Result<(Param, Rational), CliError> {
    let bad = || config_error(format!("bad --nu `{entry}`, expected i=p/q"));
    let (lhs, rhs) = entry.split_once('=').ok_or_else(bad)?;
    let lhs = lhs.trim();
    let index: usize = lhs.strip_prefix("nu").unwrap_or(lhs).parse().map_err(|_| bad())?;
    if index == 0 {
        return Err(bad());
    }
    let value = parse_scalar(rhs.trim()).ok().and_then(|s| s.as_rational()).ok_or_else(bad)?;
    Ok((Param::Nu(index), value))
}

fn specialization(entries: &[String], n: usize) -> Result<Specialization, CliError> {
    let mut map = BTreeMap::new();
    for e in entries {
        let (p, v) = parse_nu(e)?;
        if let Param::Nu(i) = p {
            if i > n {
                return Err(config_error(format!("--nu index {i} exceeds n = {n}")));
            }
        }
        map.insert(p, v);
    }
    Ok(Specialization(map))
}

fn max_n() -> Result<usize, CliError> {
    match std::env::var("RACAHKIT_MAX_N") {
        Ok(v) => v.trim().parse().map_err(|_| config_error(format!("RACAHKIT_MAX_N must be an integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn reject_nu(cli: &Cli, what: &str) -> Result<(), CliError> {
    if cli.global.nu.is_empty() {
        Ok(())
    } else {
        Err(config_error(format!("--nu is not supported by {what}; its checks are symbolic")))
    }
}

fn suite(s: SuiteArg) -> Suite {
    match s {
        SuiteArg::Su11 => Suite::Su11,
        SuiteArg::Commute => Suite::Commute,
        SuiteArg::Rank1 => Suite::Rank1,
        SuiteArg::Linear => Suite::Linear,
        SuiteArg::Chain => Suite::Chain,
        SuiteArg::Centrality => Suite::Centrality,
        SuiteArg::All => Suite::All,
    }
}

struct Run<'a> {
    cli: &'a Cli,
    config: RunConfig,
    reports: Timed,
    basis: Vec<BasisEntry>,
}

pub(crate) fn execute(cli: &Cli) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let g = &cli.global;
    let config = RunConfig {
        n: g.n,
        k: g.k,
        models: models(g.model).iter().map(|m| m.name().to_string()).collect(),
        subset: g.subset.clone(),
        degree: g.degree,
        ..RunConfig::default()
    };
    let mut run = Run { cli, config, reports: Vec::new(), basis: Vec::new() };
    match &cli.command {
        Command::Su11 { emit_op } => run.su11(*emit_op)?,
        Command::Racah { action: VerifyAction::Verify(v) } => run.racah(v.suite)?,
        Command::Basis { order, explicit } => run.basis(*order, *explicit)?,
        Command::Reduced { action: VerifyAction::Verify(v) } => run.reduced(v.all_pairs)?,
        Command::Laplace { action: VerifyAction::Verify(_) } => run.laplace()?,
        Command::Miller { action: ReduceAction::Reduce } => run.miller()?,
        Command::All { no_cap } => run.all(*no_cap)?,
        Command::Compare { .. } => unreachable!("handled by the caller"),
    }
    Ok(SuiteReport::new(run.config, run.reports, run.basis, start.elapsed(), g.deterministic))
}

impl Run<'_> {
    fn set_command(&mut self, name: &str) {
        self.config.command = name.to_string();
    }

    fn option(&mut self, key: &str, value: impl ToString) {
        self.config.options.insert(key.to_string(), value.to_string());
    }

    fn spec(&mut self, n: usize) -> Result<Specialization, CliError> {
        let spec = specialization(&self.cli.global.nu, n)?;
        self.config.nu = spec.entries().into_iter().collect();
        Ok(spec)
    }

    fn su11(&mut self, emit_op: bool) -> Result<(), CliError> {
        self.set_command("su11");
        self.option("emit_op", emit_op);
        let n = require_n(self.cli.global.n, 1)?;
        let spec = self.spec(n)?;
        let subsets = match &self.cli.global.subset {
            Some(s) => vec![Subset::parse(n, s)?],
            None => Subset::all(n),
        };
        for kind in models(self.cli.global.model) {
            for a in &subsets {
                timed(&mut self.reports, || {
                    let t = make_realization_with(n, a, kind, &spec)?;
                    let mut r = verify_su11(&t).with_specialization(&spec);
                    if emit_op {
                        r.record("plus", &t.plus);
                        r.record("minus", &t.minus);
                        r.record("zero", &t.zero);
                        r.record("casimir", t.casimir());
                    }
                    Ok(r)
                })?;
            }
        }
        Ok(())
    }

    fn racah_suite(&mut self, n: usize, s: SuiteArg, spec: &Specialization) -> Result<(), CliError> {
        let cap = max_n()?;
        let level = if n > cap {
            let degree = self.cli.global.degree.or(self.cli.global.k).unwrap_or(2);
            self.option("check_level", format!("monomials of degree {degree} (n above cap {cap})"));
            CheckLevel::OnMonomials(degree)
        } else {
            CheckLevel::Operator
        };
        for kind in models(self.cli.global.model) {
            let ctx = RacahContext::with_options(n, kind, spec.clone(), level)?;
            self.reports.extend(verify_suite_timed(&ctx, suite(s))?);
        }
        Ok(())
    }

    fn racah(&mut self, s: SuiteArg) -> Result<(), CliError> {
        self.set_command("racah verify");
        self.option("suite", format!("{s:?}").to_lowercase());
        let n = require_n(self.cli.global.n, 1)?;
        let spec = self.spec(n)?;
        self.racah_suite(n, s, &spec)
    }

    fn basis(&mut self, order: Order, explicit: Option<Explicit>) -> Result<(), CliError> {
        self.set_command("basis");
        self.option("order", format!("{order:?}").to_lowercase());
        if let Some(e) = explicit {
            self.option("explicit", format!("{e:?}").to_lowercase());
        }
        let n = require_n(self.cli.global.n, 2)?;
        let k = require_k(self.cli.global.k)?;
        let spec = self.spec(n)?;
        let order = match order {
            Order::Standard => BasisOrder::Standard,
            Order::Permuted => BasisOrder::Permuted,
        };
        for kind in models(self.cli.global.model) {
            let start = Instant::now();
            let basis = build_basis(n, k, kind, order)?;
            let lower = lowering(n, kind)?;
            let mut r = VerificationReport::new(format!("basis, k={k}"), n, Some(kind));
            let expected = racahkit_core::harmonics::binomial(k as u64 + n as u64 - 2, n as u64 - 2) as i64;
            r.push(IdentityCheck::condition("basis size = binomial(k+n-2, n-2)", basis.len() as i64, expected));
            for (label, psi) in &basis {
                r.push(IdentityCheck::polys(format!("lowering psi{label} = 0"), lower.apply(psi), LaurentPoly::zero(psi.vars())));
                let mut eigenvalues = BTreeMap::new();
                if order == BasisOrder::Standard {
                    for l in 2..=n {
                        let lambda = eigenvalue_lambda(label, l)?.value;
                        eigenvalues.insert(format!("C[{l}]"), spec.scalar(&lambda)?.to_string());
                    }
                }
                self.basis.push(BasisEntry {
                    model: kind.name().to_string(),
                    label: label.to_string(),
                    polynomial: spec.poly(psi)?.to_string(),
                    eigenvalues,
                });
            }
            self.reports.push((r, start.elapsed()));
            if order == BasisOrder::Standard {
                timed(&mut self.reports, || verify_diagonal(n, k, kind))?;
            }
            if explicit == Some(Explicit::Jacobi) {
                match kind {
                    ModelKind::BarutGirardello => timed(&mut self.reports, || verify_jacobi_explicit(n, k))?,
                    ModelKind::Bargmann => timed(&mut self.reports, || verify_bargmann_explicit(n, k))?,
                }
            }
        }
        Ok(())
    }

    fn reduced(&mut self, all: bool) -> Result<(), CliError> {
        self.set_command("reduced verify");
        self.option("all_pairs", all);
        reject_nu(self.cli, "reduced verify")?;
        let n = require_n(self.cli.global.n, 3)?;
        let k = require_k(self.cli.global.k)?;
        let subsets = if all {
            all_pairs(n)
        } else {
            match &self.cli.global.subset {
                Some(s) => vec![Subset::parse(n, s)?],
                None => vec![Subset::new(n, [1, 2])?],
            }
        };
        for b in subsets {
            timed(&mut self.reports, || verify_reduced(n, k, &b))?;
        }
        Ok(())
    }

    fn laplace(&mut self) -> Result<(), CliError> {
        self.set_command("laplace verify");
        reject_nu(self.cli, "laplace verify")?;
        let n = require_n(self.cli.global.n, 1)?;
        let degree = self.cli.global.degree.unwrap_or(3);
        timed(&mut self.reports, || verify_intertwine(n, degree))?;
        if n >= 2 {
            timed(&mut self.reports, || verify_ck_commutation(n, degree))?;
            let k_max = self.cli.global.k.unwrap_or(degree.min(3));
            for k in 0..=k_max {
                timed(&mut self.reports, || map_basis_laplace(n, k))?;
            }
        }
        Ok(())
    }

    fn miller(&mut self) -> Result<(), CliError> {
        self.set_command("miller reduce");
        reject_nu(self.cli, "miller reduce")?;
        let n = require_n(self.cli.global.n, 1)?;
        timed(&mut self.reports, || {
            let (_, h_tilde, mut r) = miller_reduce(n)?;
            r.record("H~", h_tilde);
            let three_quarters = Rational::new(3.into(), 4.into());
            for j in 1..=n {
                let b = potential_coefficient_at(j, &three_quarters)?;
                r.push(IdentityCheck::scalars(format!("b{j} at nu{j} = 3/4 is 0"), b.into(), int(0).into()));
            }
            Ok(r)
        })?;
        if n >= 2 {
            timed(&mut self.reports, || sphere_identity_check(n))?;
            let k_max = self.cli.global.k.unwrap_or(2);
            for k in 0..=k_max {
                timed(&mut self.reports, || verify_hyperplane(n, k))?;
            }
        }
        Ok(())
    }

    fn all(&mut self, no_cap: bool) -> Result<(), CliError> {
        reject_nu(self.cli, "all")?;
        let n = require_n(Some(self.cli.global.n.unwrap_or(3)), 1)?;
        let k = self.cli.global.k.unwrap_or(2);
        if !no_cap && (n > 4 || k > 4) {
            return Err(config_error(format!("`all` is capped at n <= 4, k <= 4 (got n={n}, k={k}); pass --no-cap to lift")));
        }
        self.set_command("all");
        self.option("no_cap", no_cap);
        self.config.n = Some(n);
        self.config.k = Some(k);
        self.racah_suite(n, SuiteArg::All, &Specialization::default())?;
        if n >= 2 {
            for kind in models(self.cli.global.model) {
                timed(&mut self.reports, || verify_dimension(n, k, kind))?;
                timed(&mut self.reports, || verify_diagonal(n, k, kind))?;
                timed(&mut self.reports, || verify_ck(n, k, kind))?;
            }
        }
        if n >= 3 {
            for b in all_pairs(n) {
                timed(&mut self.reports, || verify_reduced(n, k, &b))?;
            }
        }
        timed(&mut self.reports, || verify_intertwine(n, k))?;
        if n >= 2 {
            timed(&mut self.reports, || verify_ck_commutation(n, k))?;
            timed(&mut self.reports, || map_basis_laplace(n, k))?;
            timed(&mut self.reports, || verify_hyperplane(n, k))?;
            timed(&mut self.reports, || sphere_identity_check(n))?;
        }
        timed(&mut self.reports, || miller_reduce(n).map(|(_, _, r)| r))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_entries() {
        assert_eq!(parse_nu("2=3/4").unwrap(), (Param::Nu(2), Rational::new(3.into(), 4.into())));
        assert_eq!(parse_nu("nu1=-1").unwrap(), (Param::Nu(1), Rational::from_integer((-1).into())));
        assert!(parse_nu("0=1").is_err());
        assert!(parse_nu("1").is_err());
        assert!(parse_nu("1=x1").is_err());
    }
}
