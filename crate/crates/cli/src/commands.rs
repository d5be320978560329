use std::str::FromStr;

use nuca_core::density::{density_laws_check, natural_density, DensityValue, LatticeSet};
use nuca_core::engine::{image_open_probe, image_window, preinjectivity_witness, WindowPlan, WitnessSearch};
use nuca_core::entropy::{entropy_sequence, theorem_b_bound_compare, theorem_b_window_certificate, FullShift, ImageCounter, PatternCounter};
use nuca_core::format::{
    parse_finite_set, parse_kernel_witness, parse_preinj_witness, read_tiling, write_configuration, write_cylinder, write_tiling,
    write_window,
};
use nuca_core::lattice::restrict;
use nuca_core::linear::{kernel_preinjectivity, mdim_sequence, preinjectivity_locus, KernelSearch, TileStatus};
use nuca_core::quasitiling::{ab_covering_check, construct, verify};
use nuca_core::report::{pass_fail, Kind, Report};
use nuca_core::sft::{delta_irreducibility_check, periodic_approximation_check, periodic_points, theorem_c_certificate};
use nuca_core::{BoxFolner, Dim, PeriodLattice, Rational};

use crate::args::*;
use crate::context::*;

pub enum Status {
    Done,
    Fail,
    Budget,
}

impl Status {
    pub fn exit_code(&self) -> u8 {
        match self {
            Status::Done => EXIT_OK,
            Status::Fail => EXIT_FAIL,
            Status::Budget => EXIT_BUDGET,
        }
    }
}

pub struct Outcome {
    pub report: Report,
    pub status: Status,
    pub summary: String,
}

impl Outcome {
    fn done(report: Report, summary: impl Into<String>) -> Outcome {
        Outcome {
            report,
            status: Status::Done,
            summary: summary.into(),
        }
    }

    fn verdict(report: Report, ok: bool, summary: impl Into<String>) -> Outcome {
        Outcome {
            report,
            status: if ok { Status::Done } else { Status::Fail },
            summary: summary.into(),
        }
    }
}

pub fn dispatch(command: &Command, ctx: &Ctx) -> CliResult<Outcome> {
    match command {
        Command::Simulate(a) => simulate(a, ctx),
        Command::Image(a) => image(a, ctx),
        Command::Preinj(a) => preinj(a, ctx),
        Command::CertB(a) => cert_b(a, ctx),
        Command::Entropy(a) => entropy(a, ctx),
        Command::Mdim(a) => mdim(a, ctx),
        Command::Density(a) => density(a, ctx),
        Command::Locus(a) => locus(a, ctx),
        Command::SftLang(a) => sft_lang(a, ctx),
        Command::SftPeriodic(a) => sft_periodic(a, ctx),
        Command::SftCertC(a) => sft_cert_c(a, ctx),
        Command::SftIrred(a) => sft_irred(a, ctx),
        Command::Tiling(a) => tiling(a, ctx),
        Command::Probe(a) => probe(a, ctx),
        Command::Replay(a) => replay(a, ctx),
    }
}

fn path_str(p: &std::path::Path) -> String {
    quote(&p.display().to_string())
}

fn folner(dim: Dim, n_max: usize, radii: &Option<Vec<i64>>) -> CliResult<(BoxFolner, usize)> {
    match radii {
        Some(r) => Ok((BoxFolner::explicit(dim, r.clone()).context("--radii")?, r.len())),
        None => Ok((BoxFolner::centered(dim), n_max)),
    }
}

fn simulate(a: &Simulate, ctx: &Ctx) -> CliResult<Outcome> {
    let nuca = load_table(&a.rules)?;
    let dim = nuca.dim();
    let x = nuca_core::format::parse_configuration(&a.config, dim).context("--config")?;
    if x.max_symbol() >= nuca.alphabet() {
        return Err(CliError::Usage(format!(
            "--config uses symbol {} outside the alphabet 0..{}",
            x.max_symbol(),
            nuca.alphabet()
        )));
    }
    let window = window_arg("window", &a.window, dim)?;
    // windows[j] = window + (steps - j) M
    let mut windows = vec![window.clone()];
    for _ in 0..a.steps {
        let next = windows.last().expect("nonempty").minkowski(nuca.memory())?;
        ctx.budget.check_window("simulating", next.len())?;
        windows.push(next);
    }
    windows.reverse();
    let mut state = restrict(&x, &windows[0])?;
    let mut r = ctx.report();
    r.info("config", write_configuration(&x));
    r.info("window", write_window(&window));
    r.exact("state.0", state.restrict(&window)?);
    for (t, w) in windows.iter().enumerate().skip(1) {
        ctx.budget.check_time("simulating")?;
        let plan = WindowPlan::new(&nuca, w)?;
        let mut out = vec![0; w.len()];
        plan.eval(state.values(), &mut out);
        state = nuca_core::Pattern::new(w.clone(), out)?;
        r.exact(format!("state.{t}"), state.restrict(&window)?);
    }
    Ok(Outcome::done(r, format!("simulate: {} step(s) on {} cells", a.steps, window.len())))
}

fn image(a: &Image, ctx: &Ctx) -> CliResult<Outcome> {
    let nuca = load_table(&a.rules)?;
    let window = window_arg("window", &a.window, nuca.dim())?;
    let u = cylinder_arg(&a.cylinder, nuca.dim())?;
    u.check_alphabet(nuca.alphabet()).context("--cylinder")?;
    let image = image_window(&nuca, &window, Some(&u), &ctx.budget)?;
    let mut r = ctx.report();
    r.info("window", write_window(&window));
    r.info("cylinder", write_cylinder(&u));
    r.exact("image.count", image.len());
    if a.list {
        for (i, p) in image.iter().enumerate() {
            r.exact(format!("image.pattern.{i}"), p);
        }
    }
    Ok(Outcome::done(r, format!("image: {} pattern(s) on {} cells", image.len(), window.len())))
}

fn replay_witness(rules: &std::path::Path, cylinder: &str, witness: &str) -> String {
    format!(
        "nuca replay --rules {} --cylinder {} --witness {}",
        path_str(rules),
        quote(cylinder),
        quote(witness)
    )
}

fn preinj(a: &Preinj, ctx: &Ctx) -> CliResult<Outcome> {
    if a.radius < 0 {
        return Err(CliError::Usage("--radius must be nonnegative".into()));
    }
    match load_rules(&a.rules)? {
        Rules::Linear(lin) => {
            let s = LatticeSet::parse(&a.pinned, lin.dim()).context("--pinned")?;
            let search = kernel_preinjectivity(&lin, &s, a.bound, a.radius, &ctx.budget)?;
            let mut r = ctx.report();
            r.info("search.mode", "linear kernel");
            r.info("search.pinned", &s);
            r.exact("search.bound", a.bound);
            r.exact("search.radius", a.radius);
            Ok(match search {
                KernelSearch::Found(w) => {
                    r.verdict("preinjective_up_to_bound", false);
                    r.exact("kernel.support_size", w.support.len());
                    r.witness("kernel", &w);
                    r.replay(format!(
                        "nuca replay --rules {} --pinned {} --kernel {}",
                        path_str(&a.rules),
                        quote(&s.to_string()),
                        quote(&w.to_string())
                    ));
                    Outcome::verdict(r, false, format!("preinj: FAIL, kernel vector on {} cell(s)", w.support.len()))
                }
                KernelSearch::NoneUpToBound { boxes_checked, .. } => {
                    r.verdict("preinjective_up_to_bound", true);
                    r.exact("search.boxes_checked", boxes_checked);
                    r.info("result", "none up to bound");
                    Outcome::done(r, "preinj: none up to bound")
                }
            })
        }
        Rules::Table(nuca) => {
            let u = cylinder_arg(&a.cylinder, nuca.dim())?;
            u.check_alphabet(nuca.alphabet()).context("--cylinder")?;
            let search = preinjectivity_witness(&nuca, &u, a.bound, a.radius, &ctx.budget)?;
            let mut r = ctx.report();
            r.info("search.mode", "rule table");
            r.info("search.cylinder", write_cylinder(&u));
            r.exact("search.bound", a.bound);
            r.exact("search.radius", a.radius);
            Ok(match search {
                WitnessSearch::Found(w) => {
                    r.verdict("preinjective_up_to_bound", false);
                    r.exact("witness.support_size", w.support.len());
                    r.witness("preinj", &w);
                    r.replay(replay_witness(&a.rules, &write_cylinder(&u), &w.to_string()));
                    Outcome::verdict(r, false, format!("preinj: FAIL, witness with support {}", w.support))
                }
                WitnessSearch::NoneUpToBound {
                    candidates,
                    supports_checked,
                    ..
                } => {
                    r.verdict("preinjective_up_to_bound", true);
                    r.exact("search.candidates", candidates);
                    r.exact("search.supports_checked", supports_checked);
                    r.info("result", "none up to bound");
                    Outcome::done(r, "preinj: none up to bound")
                }
                WitnessSearch::Partial {
                    completed_size,
                    supports_checked,
                    stopped_at,
                    reason,
                } => {
                    r.exact("search.completed_size", completed_size);
                    r.exact("search.supports_checked", supports_checked);
                    r.info("search.stopped_at", &stopped_at);
                    r.info("result", format!("partial: {reason}"));
                    Outcome {
                        report: r,
                        status: Status::Budget,
                        summary: format!("preinj: budget exhausted after all supports of size <= {completed_size}"),
                    }
                }
            })
        }
    }
}

fn cert_b(a: &CertB, ctx: &Ctx) -> CliResult<Outcome> {
    let nuca = load_table(&a.rules)?;
    let window = window_arg("window", &a.window, nuca.dim())?;
    let u = cylinder_arg(&a.cylinder, nuca.dim())?;
    u.check_alphabet(nuca.alphabet()).context("--cylinder")?;
    let c = theorem_b_window_certificate(&nuca, &u, &window, a.filler, &ctx.budget)?;
    let mut r = ctx.report();
    r.info("window", write_window(&window));
    r.info("cylinder", write_cylinder(&u));
    r.info("filler", a.filler);
    r.exact("certB.free_cells", c.free.len());
    r.exact("certB.compared_cells", c.compared.len());
    r.exact("certB.family_size", c.family_size);
    r.exact("certB.image_size", c.image_size);
    r.verdict("certB", c.passed());
    if let Some(w) = &c.witness {
        r.witness("certB", w);
        r.replay(replay_witness(&a.rules, &write_cylinder(&u), &w.to_string()));
    }
    let summary = format!("certB: {c}");
    Ok(Outcome::verdict(r, c.passed(), summary))
}

/// `ln(count)/size` as an exact symbolic value, `ln(b)` when `count = b^size`.
fn log_text(count: u128, size: usize) -> String {
    if count <= 1 || size == 0 {
        return "0".into();
    }
    let guess = (count as f64).powf(1.0 / size as f64).round() as u128;
    for b in guess.saturating_sub(1)..=guess + 1 {
        if b >= 2 && b.checked_pow(size as u32) == Some(count) {
            return format!("ln({b})");
        }
    }
    format!("ln({count})/{size}")
}

fn float(v: f64) -> String {
    format!("{v:.9}")
}

fn entropy(a: &Entropy, ctx: &Ctx) -> CliResult<Outcome> {
    let mut r = ctx.report();
    let table;
    let sft;
    let u;
    let full;
    let counter: &dyn PatternCounter = match (&a.rules, &a.sft, a.full) {
        (Some(p), _, _) => {
            table = load_table(p)?;
            u = cylinder_arg(&a.cylinder, table.dim())?;
            u.check_alphabet(table.alphabet()).context("--cylinder")?;
            r.info("cylinder", write_cylinder(&u));
            if a.compare {
                return entropy_compare(a, ctx, &table, &u, r);
            }
            &ImageCounter {
                nuca: &table,
                cylinder: Some(&u),
            }
        }
        (None, Some(p), _) => {
            sft = load_sft(p)?;
            &sft
        }
        (None, None, Some(q)) => {
            full = FullShift {
                dim: dim_arg(a.dim)?,
                alphabet: q,
            };
            &full
        }
        _ => return Err(CliError::Usage("one of --rules, --sft or --full is required".into())),
    };
    let (f, n_max) = folner(counter.dim(), a.n_max, &a.radii)?;
    let rep = entropy_sequence(counter, &f, n_max, &ctx.budget)?;
    r.info("source", &rep.source);
    r.exact("alphabet", rep.alphabet);
    for w in &rep.window_values {
        let n = w.n;
        r.exact(format!("window.{n}.radius"), w.radius);
        r.exact(format!("window.{n}.size"), w.size);
        r.exact(format!("window.{n}.count"), w.count);
        r.exact(format!("window.{n}.entropy"), log_text(w.count, w.size));
        r.estimate(format!("window.{n}.entropy_value"), float(w.value));
        r.estimate(format!("window.{n}.normalized"), float(w.normalized));
    }
    let status = match &rep.truncated {
        Some(t) => {
            r.info("truncated", t);
            if rep.window_values.is_empty() {
                Status::Budget
            } else {
                Status::Done
            }
        }
        None => Status::Done,
    };
    let summary = format!("entropy: {} window(s) counted", rep.window_values.len());
    Ok(Outcome {
        report: r,
        status,
        summary,
    })
}

fn entropy_compare(
    a: &Entropy,
    ctx: &Ctx,
    nuca: &nuca_core::engine::RuleAssignment,
    u: &nuca_core::engine::Cylinder,
    mut r: Report,
) -> CliResult<Outcome> {
    let (f, n_max) = folner(nuca.dim(), a.n_max, &a.radii)?;
    if a.radii.is_some() {
        return Err(CliError::Usage("--compare uses centered windows; drop --radii".into()));
    }
    let cmp = theorem_b_bound_compare(nuca, u, &f, n_max, a.filler, &ctx.budget)?;
    r.info("filler", a.filler);
    let mut all_ok = true;
    for row in &cmp.rows {
        let n = row.n;
        r.exact(format!("window.{n}.radius"), row.radius);
        r.exact(format!("window.{n}.size"), row.size);
        r.exact(format!("window.{n}.pinned"), row.pinned);
        r.exact(format!("window.{n}.count"), row.count);
        r.exact(format!("window.{n}.entropy"), log_text(row.count, row.size));
        r.estimate(format!("window.{n}.entropy_value"), float(row.entropy));
        r.exact(format!("window.{n}.free_fraction"), row.free_fraction);
        r.estimate(format!("window.{n}.bound_value"), float(row.bound));
        r.verdict(format!("window.{n}.meets_bound"), row.meets_bound);
        match row.certificate {
            Some(ok) => {
                r.verdict(format!("window.{n}.certB"), ok);
                all_ok &= ok;
            }
            None => r.info(format!("window.{n}.certB"), "skipped (budget)"),
        }
    }
    if let Some(t) = &cmp.truncated {
        r.info("truncated", t);
    }
    let summary = format!("entropy --compare: {} window(s), certificates {}", cmp.rows.len(), pass_fail(all_ok));
    Ok(Outcome::done(r, summary))
}

fn mdim(a: &Mdim, ctx: &Ctx) -> CliResult<Outcome> {
    let lin = load_linear(&a.rules)?;
    let (f, n_max) = folner(lin.dim(), a.n_max, &a.radii)?;
    let rep = mdim_sequence(&lin, &f, n_max, &ctx.budget)?;
    let mut r = ctx.report();
    r.info("field", lin.field());
    r.exact("k", lin.k());
    for row in &rep.rows {
        let n = row.n;
        r.exact(format!("window.{n}.radius"), row.radius);
        r.exact(format!("window.{n}.size"), row.size);
        r.exact(format!("window.{n}.rank"), row.rank);
        r.exact(format!("window.{n}.nullity"), row.nullity);
        r.exact(format!("window.{n}.ratio"), row.ratio);
    }
    if let Some(t) = &rep.truncated {
        r.info("truncated", t);
    }
    let last = rep.rows.last().map(|row| row.ratio.to_string()).unwrap_or_else(|| "none".into());
    Ok(Outcome::done(r, format!("mdim: {} window(s), last ratio {last}", rep.rows.len())))
}

fn push_density(r: &mut Report, key: &str, v: &DensityValue) {
    r.push(Kind::from_str(v.kind()).expect("density kinds are report kinds"), key, v);
}

fn density(a: &Density, ctx: &Ctx) -> CliResult<Outcome> {
    let dim = dim_arg(a.dim)?;
    let set = LatticeSet::parse(&a.set, dim).context("--set")?;
    if a.n_max == 0 {
        return Err(CliError::Usage("--n-max must be positive".into()));
    }
    let rep = natural_density(&set, &BoxFolner::centered(dim), a.n_max)?;
    let mut r = ctx.report();
    r.info("set", &set);
    let (up, lo) = (rep.upper_natural.expect("natural query"), rep.lower_natural.expect("natural query"));
    if up == lo && up.is_exact() {
        push_density(&mut r, "density.natural", &up);
    }
    push_density(&mut r, "density.upper_natural", &up);
    push_density(&mut r, "density.lower_natural", &lo);
    if rep.upper_banach == rep.lower_banach && rep.upper_banach.is_exact() {
        push_density(&mut r, "density.banach", &rep.upper_banach);
    }
    push_density(&mut r, "density.upper_banach", &rep.upper_banach);
    push_density(&mut r, "density.lower_banach", &rep.lower_banach);
    if let Some(p) = rep.period {
        r.exact("density.period", p);
    }
    if let (Some(lo), Some(hi)) = (rep.tail_min, rep.tail_max) {
        r.estimate("density.tail_min", lo);
        r.estimate("density.tail_max", hi);
    }
    for w in &rep.window_ratios {
        r.exact(format!("window.{}.ratio", w.n), format!("{}/{}", w.count, w.size));
    }
    let mut ok = true;
    if let Some(t) = &a.laws_with {
        let t = LatticeSet::parse(t, dim).context("--laws-with")?;
        let v = density_laws_check(&set, &t, &BoxFolner::centered(dim), a.n_max)?;
        r.exact("laws.checks", v.checks);
        r.verdict("laws", v.passed());
        if let Some(bad) = &v.violation {
            r.witness("laws", bad);
            r.replay(ctx.command.clone());
        }
        ok = v.passed();
    }
    let headline = if up == lo { format!("natural density {up}") } else { format!("upper {up}, lower {lo}") };
    let _ = ctx;
    Ok(Outcome::verdict(r, ok, format!("density: {headline}")))
}

fn locus(a: &Locus, ctx: &Ctx) -> CliResult<Outcome> {
    let lin = load_linear(&a.rules)?;
    let text = read(&a.tiling)?;
    let tiling_report = Report::parse(&text).context(a.tiling.display())?;
    let tiling = read_tiling(&tiling_report).context(a.tiling.display())?;
    let target = rational_arg("target", &a.target)?;
    let l = preinjectivity_locus(&lin, &tiling, target, &ctx.budget)?;
    let mut r = ctx.report();
    r.info("tiling", a.tiling.display());
    r.exact("region.size", l.region.len());
    r.exact("tiles", l.tiles.len());
    for t in &l.tiles {
        let i = t.tile;
        let status = match t.status {
            TileStatus::Used => "used".to_string(),
            TileStatus::TooSmall => "too-small".to_string(),
            TileStatus::Overlaps(j) => format!("overlaps-{j}"),
        };
        r.info(format!("tile.{i}.status"), status);
        if t.status == TileStatus::Used {
            r.exact(format!("tile.{i}.kernel_dim"), t.kernel_dim);
            r.exact(format!("tile.{i}.rank"), t.rank);
            r.exact(format!("tile.{i}.pinned"), t.pinned.len());
            r.verdict(format!("tile.{i}.injective"), t.injective);
        }
    }
    r.exact("locus.size", l.set.len());
    r.exact("locus.density", l.density);
    r.info("locus.target", l.target);
    if a.list {
        r.exact("locus.set", format!("finite{}", l.set));
    }
    r.verdict("locus.meets_target", l.meets_target());
    r.verdict("locus.tiles_injective", l.all_injective());
    for (i, w) in l.warnings.iter().enumerate() {
        r.info(format!("warning.{i}"), w);
    }
    let ok = l.meets_target() && l.all_injective();
    if !ok {
        r.replay(ctx.command.clone());
    }
    Ok(Outcome::verdict(r, ok, format!("locus: density {} (target {}), {}", l.density, l.target, pass_fail(ok))))
}

fn sft_lang(a: &SftLang, ctx: &Ctx) -> CliResult<Outcome> {
    let sft = load_sft(&a.sft)?;
    let window = window_arg("window", &a.window, sft.dim())?;
    let lang = sft.language(&window, &ctx.budget)?;
    let mut r = ctx.report();
    r.info("window", write_window(&window));
    r.info("mode", lang.mode);
    r.exact("language.count", lang.patterns.len());
    if a.list {
        for (i, p) in lang.patterns.iter().enumerate() {
            r.exact(format!("language.pattern.{i}"), p);
        }
    }
    Ok(Outcome::done(r, format!("sft-lang: {} pattern(s) ({})", lang.patterns.len(), lang.mode)))
}

fn period_arg(text: &str, dim: Dim) -> CliResult<PeriodLattice> {
    if text.contains('(') {
        let gens = parse_finite_set(&format!("{{{text}}}"), dim).context("--period")?;
        PeriodLattice::from_generators(dim, gens.cells()).context("--period")
    } else {
        let n: i64 = text
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("--period: expected an integer or generators, found '{text}'")))?;
        PeriodLattice::scalar(dim, n).context("--period")
    }
}

fn sft_periodic(a: &SftPeriodic, ctx: &Ctx) -> CliResult<Outcome> {
    let sft = load_sft(&a.sft)?;
    let mut r = ctx.report();
    if let (Some(n0), Some(rr), Some(n)) = (a.n0, a.r, a.n) {
        let p = periodic_approximation_check(&sft, n0, rr, n, &ctx.budget)?;
        r.exact("approx.n0", p.n0);
        r.exact("approx.r", p.r);
        r.exact("approx.n", p.n);
        r.exact("approx.k", p.k);
        r.info("approx.window", write_window(&p.window));
        r.exact("approx.period", p.period);
        r.exact("approx.base_points", p.base_points);
        r.exact("approx.language_count", p.language_count);
        r.exact("approx.periodic_count", p.periodic_count);
        r.exact("approx.witnesses_checked", p.witnesses_checked);
        r.exact("approx.witness_failures", p.witness_failures);
        r.verdict("approx.equal", p.equal());
        if !p.equal() {
            r.replay(ctx.command.clone());
        }
        let summary = format!(
            "sft-periodic: |X_F| = {}, periodic patterns = {}, {}",
            p.language_count,
            p.periodic_count,
            pass_fail(p.equal())
        );
        return Ok(Outcome::verdict(r, p.equal(), summary));
    }
    let Some(period) = &a.period else {
        return Err(CliError::Usage("give --period, or --n0, --r and --n".into()));
    };
    let lattice = period_arg(period, sft.dim())?;
    let points = periodic_points(&sft, &lattice, &ctx.budget)?;
    r.info("lattice", &lattice);
    r.exact("periodic.count", points.len());
    if a.list {
        for (i, x) in points.iter().enumerate() {
            r.exact(format!("periodic.point.{i}"), write_configuration(x));
        }
    }
    Ok(Outcome::done(r, format!("sft-periodic: {} point(s) with periods {lattice}", points.len())))
}

fn word(v: &[u8]) -> String {
    v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn sft_cert_c(a: &SftCertC, ctx: &Ctx) -> CliResult<Outcome> {
    let sft = load_sft(&a.sft)?;
    let ca = load_table(&a.rules)?;
    let u = cylinder_arg(&a.cylinder, ca.dim())?;
    let c = theorem_c_certificate(&ca, &sft, &u, a.n, a.n0, a.r, &ctx.budget)?;
    let mut r = ctx.report();
    r.info("cylinder", write_cylinder(&u));
    r.exact("certC.n", c.n);
    r.exact("certC.k", c.k);
    r.exact("certC.period", c.period);
    r.info("certC.s_delta", &c.s_delta);
    r.exact("certC.language_count", c.language_count);
    r.exact("certC.q_count", c.q_count);
    r.exact("certC.gamma_count", c.gamma_count);
    r.exact("certC.factor", c.factor);
    r.exact("certC.injective_on_q", c.injective);
    if let Some((x, y)) = &c.collision {
        r.witness("certC.collision", format!("{} | {}", word(x), word(y)));
    }
    r.verdict("certC.chain", c.chain_holds());
    if !c.chain_holds() {
        r.replay(ctx.command.clone());
    }
    let summary = format!(
        "sft-certC: |Gamma| = {} >= |Q_n| = {}, |Q_n|*{} >= {}: {}",
        c.gamma_count,
        c.q_count,
        c.factor,
        c.language_count,
        pass_fail(c.chain_holds())
    );
    Ok(Outcome::verdict(r, c.chain_holds(), summary))
}

fn sft_irred(a: &SftIrred, ctx: &Ctx) -> CliResult<Outcome> {
    let sft = load_sft(&a.sft)?;
    let gap = window_arg("gap", &a.gap, sft.dim())?;
    let v = delta_irreducibility_check(&sft, &gap, a.radius, &ctx.budget)?;
    let mut r = ctx.report();
    r.info("gap", write_window(&gap));
    r.info("mode", v.mode);
    r.exact("irred.window_pairs", v.window_pairs);
    r.verdict("irred", v.passed());
    if let Some(f) = &v.failure {
        r.witness("irred", format!("S={} T={} u={} v={}", f.s, f.t, f.u, f.v));
        r.replay(ctx.command.clone());
    }
    Ok(Outcome::verdict(
        r,
        v.passed(),
        format!("sft-irred: {} ({} window pairs, {})", pass_fail(v.passed()), v.window_pairs, v.mode),
    ))
}

fn tiling(a: &Tiling, ctx: &Ctx) -> CliResult<Outcome> {
    let dim = dim_arg(a.dim)?;
    let region = window_arg("region", &a.region, dim)?;
    let memory = window_arg("memory", &a.memory, dim)?;
    let shapes = a
        .shapes
        .iter()
        .map(|s| window_arg("shape", s, dim))
        .collect::<CliResult<Vec<_>>>()?;
    let eps = rational_arg("epsilon", &a.epsilon)?;
    let one = Rational::from_integer(1);
    let alpha = match &a.alpha {
        Some(t) => rational_arg("alpha", t)?,
        None => eps,
    };
    let beta = match &a.beta {
        Some(t) => rational_arg("beta", t)?,
        None => one - eps,
    };
    let slack = rational_arg("slack", &a.slack)?;
    let c = construct(&shapes, eps, &memory, &region)?;
    let t = &c.tiling;
    let v = verify(t, alpha, beta);
    let mut r = ctx.report();
    r.info("epsilon", eps);
    r.exact("tiling.tiles", t.tiles.len());
    r.exact("tiling.shapes_used", t.shapes_used());
    r.exact("tiling.covering", c.covering);
    r.exact("tiling.deficit", c.deficit);
    for s in &c.thin_shapes {
        r.info(format!("thin_shape.{s}"), "interior at most (1 - epsilon) of the shape");
    }
    r.info("verify.alpha", alpha);
    r.info("verify.beta", beta);
    r.verdict("verify.interiors_large", v.interiors_large.is_ok());
    if let Err(i) = v.interiors_large {
        r.witness("verify.interiors_large", format!("tile {i}"));
    }
    r.verdict("verify.interiors_disjoint", v.interiors_disjoint.is_ok());
    if let Err((i, j)) = v.interiors_disjoint {
        r.witness("verify.interiors_disjoint", format!("tiles {i} {j}"));
    }
    r.verdict("verify.covering", v.covering_ok);
    r.verdict("verify", v.passed());
    let interior_alpha = one - alpha;
    let ab_ok = match ab_covering_check(t, interior_alpha, beta, slack) {
        Ok(ab) => {
            r.exact("ab.ratio", ab.ratio);
            r.exact("ab.threshold", ab.threshold);
            r.verdict("ab", ab.passed);
            ab.passed
        }
        Err(nuca_core::Error::Precondition(m)) => {
            r.info("ab", format!("not applicable: {m}"));
            true
        }
        Err(e) => return Err(e.into()),
    };
    write_tiling(&mut r, t);
    let ok = v.passed() && ab_ok;
    if !ok {
        r.replay(ctx.command.clone());
    }
    Ok(Outcome::verdict(
        r,
        ok,
        format!("tiling: {} tile(s), covering {}, {}", t.tiles.len(), c.covering, pass_fail(ok)),
    ))
}

fn probe(a: &Probe, ctx: &Ctx) -> CliResult<Outcome> {
    let nuca = load_table(&a.rules)?;
    let e = window_arg("support", &a.support, nuca.dim())?;
    let w = window_arg("window", &a.window, nuca.dim())?;
    let found = image_open_probe(&nuca, &e, &w, &ctx.budget)?;
    let mut r = ctx.report();
    r.info("support", write_window(&e));
    r.info("window", write_window(&w));
    r.verdict("probe.open_pattern_found", found.is_some());
    let summary = match &found {
        Some(q) => {
            r.exact("probe.pattern", q);
            format!("probe: {{q}} x A^(W\\E) lies in the image for q = {q}")
        }
        None => "probe: no pattern on E has a full fibre in the image".into(),
    };
    Ok(Outcome::done(r, summary))
}

fn replay(a: &Replay, ctx: &Ctx) -> CliResult<Outcome> {
    let mut r = ctx.report();
    let ok = match (&a.witness, &a.kernel) {
        (Some(text), _) => {
            let nuca = load_table(&a.rules)?;
            let u = cylinder_arg(&a.cylinder, nuca.dim())?;
            let w = parse_preinj_witness(text, nuca.dim()).context("--witness")?;
            r.info("witness.kind", "pre-injectivity");
            w.verify(&nuca, &u)?
        }
        (None, Some(text)) => {
            let lin = load_linear(&a.rules)?;
            let s = LatticeSet::parse(&a.pinned, lin.dim()).context("--pinned")?;
            let w = parse_kernel_witness(text, lin.dim(), lin.k()).context("--kernel")?;
            r.info("witness.kind", "linear kernel");
            w.verify(&lin, &s)?
        }
        (None, None) => return Err(CliError::Usage("give --witness or --kernel".into())),
    };
    r.verdict("replay.confirmed", ok);
    let summary = if ok { "replay: witness confirmed" } else { "replay: witness NOT confirmed" };
    Ok(Outcome::verdict(r, ok, summary))
}
