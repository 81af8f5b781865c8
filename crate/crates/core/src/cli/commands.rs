use std::path::Path;

use serde_json::{json, Value};

use super::{Cli, Command, Global, Outcome};
use crate::apolarity::{
    colon_graded, extract_c, macaulay_pairing_matrix, perp_graded, socle_functional,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldConfig, Rationals};
use crate::jacobian::{
    ci_smooth, is_smooth_hypersurface, milnor_profile, smooth_reference_dims, CiOptions,
    MilnorAlgebra, Verdict,
};
use crate::lefschetz::{slp_check, slp_search};
use crate::linalg::GradedSubspace;
use crate::pipeline::{
    construct_pair, deformation_experiment, membership_u, reproduce_example, theorem14_check,
    verify_corollary, Sampling, UVerdict,
};
use crate::poly::{Family, PolyRing, Polynomial};
use crate::random::sub_stream;
use crate::report::{self, InputRecord, Report};
use crate::singular::{
    affine_hessian, brute_singular_search, check_lemma_defect, defect, is_node, parse_points,
    special_q, MAX_SEARCH_POINTS,
};

/// Reads `@path`, an existing file path, or returns the text itself.
fn load(spec: &str) -> Result<(String, String)> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
        return Ok((format!("file:{path}"), text));
    }
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| Error::Io(format!("{spec}: {e}")))?;
        return Ok((format!("file:{spec}"), text));
    }
    Ok(("inline".into(), spec.to_string()))
}

struct Ctx<'a, K: Field> {
    ring: PolyRing<K>,
    global: &'a Global,
    report: Report,
}

impl<K: Field> Ctx<'_, K> {
    fn field(&self) -> &K {
        self.ring.field()
    }

    fn sampling(&self) -> Sampling {
        Sampling {
            seed: self.global.seed,
            trials: self.global.trials,
            bound: self.global.coeff_bound,
        }
    }

    fn ci_options(&self) -> CiOptions {
        CiOptions {
            k_max: self.global.kmax,
            ..CiOptions::default()
        }
    }

    /// Resolves a polynomial argument and records it as an input.
    fn poly(&mut self, name: &str, spec: &str, family: Family) -> Result<Polynomial<K::Elem>> {
        let spec = spec.trim();
        let (source, raw, p) = if let Some(d) = spec.strip_prefix("random:") {
            let d: u32 = d
                .parse()
                .map_err(|_| Error::Syntax { position: 7, message: format!("bad degree in '{spec}'") })?;
            let mut rng = sub_stream(self.global.seed, &format!("input-{name}"), 0);
            let p = self
                .ring
                .random_homogeneous(&mut rng, d, self.global.coeff_bound.max(1), family);
            let text = self.ring.format(&p);
            (spec.to_string(), text, p)
        } else if let Some(d) = spec.strip_prefix("special:") {
            let d: u32 = d
                .parse()
                .map_err(|_| Error::Syntax { position: 8, message: format!("bad degree in '{spec}'") })?;
            let p = special_q(&self.ring, d)?.with_family(family);
            let text = self.ring.format(&p);
            (spec.to_string(), text, p)
        } else {
            let (source, raw) = load(spec)?;
            let p = self.ring.parse(raw.trim(), family, None)?;
            (source, raw, p)
        };
        let value = self.ring.format(&p);
        self.report.input(name, InputRecord { source, raw, value });
        Ok(p)
    }

    fn points(&mut self, spec: &str) -> Result<Vec<Vec<K::Elem>>> {
        let (source, raw) = load(spec)?;
        let text = if source == "inline" { raw.replace(';', "\n") } else { raw.clone() };
        let pts = parse_points(self.field(), self.ring.nvars(), &text)?;
        let value = pts
            .iter()
            .map(|p| p.iter().map(|x| self.field().format(x)).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";");
        self.report.input("points", InputRecord { source, raw, value });
        Ok(pts)
    }

    fn algebra(&mut self, name: &str, spec: &str) -> Result<MilnorAlgebra<K>> {
        let f = self.poly(name, spec, Family::Primal)?;
        MilnorAlgebra::new(&self.ring, &f)
    }
}

fn family_of(spec: &str) -> Family {
    if spec.starts_with("random:") || spec.starts_with("special:") {
        return Family::Primal;
    }
    match load(spec) {
        Ok((_, raw)) if raw.contains('y') => Family::Dual,
        _ => Family::Primal,
    }
}

pub(super) fn run<K: Field>(field: K, cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let mut ctx = Ctx {
        ring: PolyRing::new(field, g.nvars),
        global: g,
        report: Report::new(cli.command.name(), FieldConfig::Rational, g.seed),
    };
    ctx.report.field = ctx.field().config();
    ctx.report.param("nvars", g.nvars);
    let code = dispatch(&mut ctx, &cli.command)?;
    Ok(Outcome { report: ctx.report, code })
}

fn dispatch<K: Field>(ctx: &mut Ctx<'_, K>, cmd: &Command) -> Result<i32> {
    let g = ctx.global;
    match cmd {
        Command::MilnorDims(a) => {
            let alg = ctx.algebra("f", &a.poly)?;
            ctx.report.param("kmax", g.kmax);
            let prof = milnor_profile(&ctx.ring, alg.form(), g.kmax)?;
            ctx.report.result("profile", report::profile(&prof));
            if alg.degree() >= 2 {
                let reference = smooth_reference_dims(ctx.ring.nvars(), alg.degree())?;
                let matches = prof
                    .dims
                    .iter()
                    .all(|(k, d)| reference.get(*k as usize).map_or(0, |&r| r as usize) == *d);
                ctx.report.result("smooth_reference", reference);
                ctx.report.result("matches_smooth_reference", matches);
            }
        }
        Command::Smooth(a) => {
            let f = ctx.poly("f", &a.poly, Family::Primal)?;
            let cert = is_smooth_hypersurface(&ctx.ring, &f)?;
            ctx.report.result("verdict", cert.verdict.as_str());
            ctx.report.result("certification_degree", cert.degree);
            ctx.report.certificate("smoothness", report::smoothness(&cert));
            if cert.verdict == Verdict::Inconclusive && ctx.field().config() != FieldConfig::Rational {
                // Decide over Q from the same text when it has a rational reading.
                let raw = ctx.report.inputs["f"].raw.clone();
                let qring = PolyRing::new(Rationals, ctx.ring.nvars());
                if let Ok(fq) = qring.parse(raw.trim(), Family::Primal, None) {
                    let qc = is_smooth_hypersurface(&qring, &fq)?;
                    ctx.report.result("rational_verdict", qc.verdict.as_str());
                    ctx.report.certificate("rational_recheck", report::smoothness(&qc));
                }
            }
        }
        Command::CiSmooth { pair, general, search_prime } => {
            let f = ctx.poly("f", &pair.f, Family::Primal)?;
            let q = ctx.poly("q", &pair.q, Family::Primal)?;
            let opts = CiOptions {
                k_max: g.kmax,
                allow_general: *general,
                search_prime: *search_prime,
            };
            ctx.report.param("kmax", g.kmax);
            ctx.report.param("general", *general);
            ctx.report.param("search_prime", *search_prime);
            let cert = ci_smooth(&ctx.ring, &f, &q, opts)?;
            ctx.report.result("verdict", cert.verdict.as_str());
            ctx.report.certificate("complete_intersection", report::smoothness(&cert));
        }
        Command::Perp { polys, jacobian, degree } => {
            let e = match jacobian {
                Some(spec) => {
                    let alg = ctx.algebra("f", spec)?;
                    let k = degree.ok_or_else(|| Error::Precondition("--degree is required with --jacobian".into()))?;
                    (*alg.jacobian_piece(k)).clone()
                }
                None => {
                    if polys.is_empty() && degree.is_none() {
                        return Err(Error::Precondition("give --poly forms, or --degree for the zero subspace".into()));
                    }
                    let family = polys.first().map_or(Family::Primal, |s| family_of(s));
                    let mut ps = Vec::new();
                    for (i, s) in polys.iter().enumerate() {
                        ps.push(ctx.poly(&format!("e{i:02}"), s, family)?);
                    }
                    let k = match degree {
                        Some(k) => *k,
                        None => ps
                            .iter()
                            .find_map(|p| p.homogeneous_degree())
                            .ok_or_else(|| Error::Precondition("cannot infer the degree; pass --degree".into()))?,
                    };
                    GradedSubspace::span_polys(&ctx.ring, k, family, &ps)?
                }
            };
            let perp = perp_graded(&ctx.ring, &e)?;
            ctx.report.param("degree", e.degree());
            ctx.report.result("subspace_dim", e.dim());
            ctx.report.result("perp", report::subspace(&ctx.ring, &perp));
        }
        Command::Colon { pair, k } => {
            let alg = ctx.algebra("f", &pair.f)?;
            let q = ctx.poly("q", &pair.q, Family::Primal)?;
            ctx.report.param("k", *k);
            let c = colon_graded(&alg, &q, *k)?;
            ctx.report.result("dim", c.dim());
            ctx.report.result("codim", c.codim());
            ctx.report.result("colon", report::subspace(&ctx.ring, &c));
        }
        Command::ExtractC(pair) => {
            let alg = ctx.algebra("f", &pair.f)?;
            let q = ctx.poly("q", &pair.q, Family::Primal)?;
            let c = extract_c(&alg, &q)?;
            ctx.report.result("c", report::poly(&ctx.ring, &c));
        }
        Command::SoclePairing { poly, j } => {
            let alg = ctx.algebra("f", &poly.poly)?;
            ctx.report.param("j", *j);
            let lambda = socle_functional(&alg)?;
            let m = macaulay_pairing_matrix(&alg, &lambda, *j)?;
            let top = ctx.ring.basis(lambda.degree);
            let support: Vec<Value> = lambda
                .lambda
                .iter()
                .enumerate()
                .filter(|(_, x)| !ctx.field().is_zero(x))
                .map(|(i, x)| {
                    let mono = ctx.ring.term(top.get(i).clone(), ctx.field().one(), Family::Primal);
                    json!([ctx.ring.format(&mono), ctx.field().format_fixed(x)])
                })
                .collect();
            let rank = ctx.field().rank(&m);
            ctx.report.result("socle_degree", lambda.degree);
            ctx.report.result("socle_functional", support);
            ctx.report.result("pairing_matrix", report::matrix(ctx.field(), &m));
            ctx.report.result("rows", m.rows());
            ctx.report.result("cols", m.cols());
            ctx.report.result("rank", rank);
            ctx.report.result("nondegenerate", rank == m.rows() && rank == m.cols());
        }
        Command::Defect { points, k } => {
            let pts = ctx.points(points)?;
            ctx.report.param("k", *k);
            let d = defect(&ctx.ring, &pts, *k);
            ctx.report.result("defect", report::defect(&d));
        }
        Command::LemmaDefect { poly, points, k } => {
            let alg = ctx.algebra("f", &poly.poly)?;
            let pts = ctx.points(points)?;
            ctx.report.param("k", *k);
            let c = check_lemma_defect(&alg, &pts, *k)?;
            ctx.report.result("lemma", report::lemma(&c));
        }
        Command::SpecialQ { n, d } => {
            let ring = PolyRing::new(ctx.field().clone(), n + 1);
            ctx.report.param("n", *n);
            ctx.report.param("d", *d);
            let q = special_q(&ring, *d)?;
            ctx.report.result("q", report::poly(&ring, &q));
            ctx.report.result("terms", q.num_terms());
        }
        Command::SingularSearch { poly, prime } => {
            let f = ctx.poly("f", &poly.poly, Family::Primal)?;
            ctx.report.param("prime", *prime);
            let pts = brute_singular_search(&ctx.ring, &f, *prime)?;
            let scanned: u64 = (0..ctx.ring.nvars() as u32).map(|i| prime.pow(i)).sum();
            debug_assert!(scanned <= MAX_SEARCH_POINTS);
            ctx.report.result("points_scanned", scanned);
            ctx.report.result("count", pts.len());
            ctx.report.result(
                "points",
                pts.iter().map(|p| p.iter().map(u64::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            );
        }
        Command::NodeCheck { poly, point, chart } => {
            let f = ctx.poly("f", &poly.poly, Family::Primal)?;
            let pts = ctx.points(point)?;
            let [pt] = pts.as_slice() else {
                return Err(Error::Precondition("give exactly one point".into()));
            };
            let node = is_node(&ctx.ring, &f, pt, *chart)?;
            let h = affine_hessian(&ctx.ring, &f, pt, *chart)?;
            ctx.report.param("chart", *chart);
            ctx.report.result("is_node", node);
            ctx.report.result("affine_hessian", report::matrix(ctx.field(), &h));
        }
        Command::Lefschetz { poly, ell } => {
            let alg = ctx.algebra("f", &poly.poly)?;
            match ell {
                Some(spec) => {
                    let l = ctx.poly("ell", spec, Family::Primal)?;
                    let p = slp_check(&alg, &l)?;
                    ctx.report.result("verdict", p.verdict);
                    ctx.report.result("profile", report::lefschetz(&ctx.ring, &p));
                }
                None => {
                    ctx.report.param("trials", g.trials);
                    ctx.report.param("coeff_bound", g.coeff_bound);
                    let s = slp_search(&alg, g.trials, g.coeff_bound, g.seed)?;
                    ctx.report.result("verdict", s.witness.is_some());
                    ctx.report.result("trials_used", s.trials_used);
                    ctx.report.result(
                        "witness",
                        s.witness.as_ref().map(|p| report::lefschetz(&ctx.ring, p)),
                    );
                    ctx.report.result(
                        "failures",
                        s.failures.iter().map(|p| report::lefschetz(&ctx.ring, p)).collect::<Vec<_>>(),
                    );
                    let anomaly = s.witness.is_none()
                        && ctx.field().config() == FieldConfig::Rational
                        && g.coeff_bound >= 2;
                    ctx.report.result("anomaly", anomaly);
                }
            }
        }
        Command::MembershipU(a) => {
            let alg = ctx.algebra("f", &a.poly)?;
            sampling_params(ctx);
            let m = membership_u(&alg, ctx.sampling())?;
            ctx.report.certificate("f_smooth", report::smoothness(&m.f_smooth));
            ctx.report.result("perp_dim", m.perp_dim);
            ctx.report.result("trials_used", m.trials_used);
            ctx.report.result(
                "rejected",
                m.rejected.iter().map(|v| v.as_str()).collect::<Vec<_>>(),
            );
            match &m.verdict {
                UVerdict::InU { witness, certificate } => {
                    ctx.report.result("verdict", "InU");
                    ctx.report.result("witness", report::poly(&ctx.ring, witness));
                    ctx.report.result("witness_normalized", report::poly(&ctx.ring, &ctx.ring.normalize(witness)));
                    ctx.report.certificate("witness_smooth", report::smoothness(certificate));
                }
                UVerdict::NotCertified { reason } => {
                    ctx.report.result("verdict", "NotCertified");
                    ctx.report.result("reason", reason.as_str());
                }
            }
        }
        Command::ConstructPair { poly, g: gspec, max_perturbations } => {
            let alg = ctx.algebra("f", &poly.poly)?;
            sampling_params(ctx);
            ctx.report.param("kmax", g.kmax);
            ctx.report.param("max_perturbations", *max_perturbations);
            let witness = match gspec {
                Some(spec) => ctx.poly("g", spec, Family::Dual)?,
                None => {
                    let m = membership_u(&alg, ctx.sampling())?;
                    match m.verdict {
                        UVerdict::InU { witness, .. } => witness,
                        UVerdict::NotCertified { reason } => {
                            return Err(Error::Precondition(format!("F not certified in U: {reason}")))
                        }
                    }
                }
            };
            ctx.report.result("g", report::poly(&ctx.ring, &witness));
            let pc = construct_pair(&alg, &witness, ctx.sampling(), *max_perturbations, ctx.ci_options())?;
            let ring = &ctx.ring;
            ctx.report.result("q_prime", report::poly(ring, &pc.q_prime));
            let attempts: Vec<Value> = pc
                .attempts
                .iter()
                .map(|(q, c)| json!({"q": ring.format(q), "verdict": c.verdict.as_str(), "degree": c.degree}))
                .collect();
            ctx.report.result("attempts", attempts);
            ctx.report.result("colon_probe", report::poly(ring, &pc.colon_probe));
            ctx.report.result("colon_invariant", pc.colon_invariant);
            ctx.report.result("success", pc.pair.is_some());
            if let Some(p) = &pc.pair {
                ctx.report.result("q", report::poly(ring, &p.q));
                ctx.report.result("c", report::poly(ring, &p.c));
                ctx.report.result("c_matches_witness", p.c_matches_witness);
                ctx.report.result("colon1_dim", p.colon1_dim);
                ctx.report.certificate("y_smooth", report::smoothness(&p.y_smooth));
                ctx.report.certificate("c_smooth", report::smoothness(&p.c_smooth));
            }
        }
        Command::VerifyCorollary(pair) => {
            let alg = ctx.algebra("f", &pair.f)?;
            let q = ctx.poly("q", &pair.q, Family::Primal)?;
            ctx.report.param("kmax", g.kmax);
            let cor = verify_corollary(&alg, &q, ctx.ci_options())?;
            let ring = &ctx.ring;
            let item_i = json!({
                "pass": cor.item_i(),
                "f_verdict": cor.f_smooth.verdict.as_str(),
                "y": match &cor.y_smooth {
                    Ok(c) => report::smoothness(c),
                    Err(e) => json!({"error": e.to_string()}),
                },
            });
            let item_ii = json!({
                "pass": cor.item_ii(),
                "c": match &cor.c {
                    Ok(c) => Value::String(ring.format(c)),
                    Err(_) => Value::Null,
                },
                "error": cor.c.as_ref().err().map(|e| e.to_string()),
                "c_smooth": cor.c_smooth.as_ref().map(report::smoothness),
            });
            let item_iii = json!({"pass": cor.item_iii(), "colon1_dim": cor.colon1_dim});
            ctx.report.result("item_i", item_i);
            ctx.report.result("item_ii", item_ii);
            ctx.report.result("item_iii", item_iii);
            ctx.report.result("passes", cor.passes());
            ctx.report.certificate("f_smooth", report::smoothness(&cor.f_smooth));
        }
        Command::Theorem14(a) => {
            let alg = ctx.algebra("f", &a.poly)?;
            sampling_params(ctx);
            ctx.report.param("kmax", g.kmax);
            let rep = theorem14_check(&alg, ctx.sampling(), ctx.ci_options())?;
            let ring = &ctx.ring;
            ctx.report.result("source_dim", rep.source_dim);
            ctx.report.result("ell", rep.ell.as_ref().map(|(l, _)| ring.format(l)));
            ctx.report.result("ell_rank", rep.ell.as_ref().map(|(_, r)| *r));
            ctx.report.result("ell_trials", rep.ell_trials);
            ctx.report.result("q", rep.q.as_ref().map(|(q, _, _)| ring.format(q)));
            ctx.report.result("q_rank", rep.q.as_ref().map(|(_, r, _)| *r));
            ctx.report.result("q_trials", rep.q_trials);
            ctx.report.result(
                "q_attempts",
                rep.q_attempts
                    .iter()
                    .map(|(r, v)| json!({"rank": r, "y_verdict": v.as_str()}))
                    .collect::<Vec<_>>(),
            );
            ctx.report.result("colon1_dim", rep.colon1_dim);
            ctx.report.result("passes", rep.passes());
            if let Some((_, _, c)) = &rep.q {
                ctx.report.certificate("y_smooth", report::smoothness(c));
            }
        }
        Command::Deformation { steps } => {
            if ctx.field().config() != FieldConfig::Rational {
                return Err(Error::Precondition("the deformation experiment runs over the rationals".into()));
            }
            if ctx.ring.nvars() != 5 {
                return Err(Error::Precondition("the deformation experiment uses 5 variables".into()));
            }
            sampling_params(ctx);
            ctx.report.param("steps", *steps);
            let rep = deformation_experiment(*steps, ctx.sampling())?;
            let qring = PolyRing::new(Rationals, 5);
            ctx.report.result("r", report::poly(&qring, &rep.r));
            ctx.report.result("r_attempts", rep.r_attempts);
            let rows: Vec<Value> = rep
                .steps
                .iter()
                .map(|s| {
                    let (in_u, witness) = match s.membership.as_ref().map(|m| &m.verdict) {
                        Some(UVerdict::InU { witness, .. }) => (true, Some(qring.format(&qring.normalize(witness)))),
                        _ => (false, None),
                    };
                    json!({
                        "t": Rationals.format_fixed(&s.t),
                        "f": qring.format(&s.f),
                        "smooth": s.smooth.as_str(),
                        "perp_dim": s.perp_dim,
                        "in_u": in_u,
                        "witness_normalized": witness,
                        "fermat_residual": s.fermat_residual,
                    })
                })
                .collect();
            ctx.report.result("steps", rows);
            ctx.report.result(
                "smallest_t_in_u",
                rep.smallest_in_u().map(|t| Rationals.format_fixed(t)),
            );
        }
        Command::ReproduceExample => {
            let checks = reproduce_example(ctx.field())?;
            let all = checks.iter().all(|c| c.passes());
            ctx.report.result(
                "checks",
                checks
                    .iter()
                    .map(|c| json!({"name": c.name, "expected": c.expected, "found": c.found, "pass": c.passes()}))
                    .collect::<Vec<_>>(),
            );
            ctx.report.result("all_pass", all);
            if !all {
                return Ok(3);
            }
        }
    }
    Ok(0)
}

fn sampling_params<K: Field>(ctx: &mut Ctx<'_, K>) {
    let s = ctx.sampling();
    ctx.report.param("trials", s.trials);
    ctx.report.param("coeff_bound", s.bound);
}
