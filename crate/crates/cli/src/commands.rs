use std::path::Path;

use serde_json::{json, Value};
use tworank::extbounds::{free_rank_rp, gl_rank_audit, headline_report, perm_rank_audit};
use tworank::forms::{common_zero_quadratics, random_family, QuadraticSystem};
use tworank::gf2::{BitVector, Subspace};
use tworank::json as tj;
use tworank::phigroup::{
    center, extension_profile, max_isotropic_qzero, search_forms, PhiGroup, SearchMode,
};
use tworank::polyalg::{
    euler_class_restriction, hilbert_function, is_regular_sequence, power_span_test,
    quotient_total_dim, transgression_check, EulerClass, GradedPoly,
};
use tworank::repaction::{
    build_induced, is_free_on_product, is_two_central, max_isotropy_rank, GroupOracle, MonomialRep,
};
use tworank::{Error, Result};

use crate::report::{error_object, Outcome, Report};
use crate::{
    AuditCmd, BoundsCmd, Command, CzeroArgs, FormsCmd, GroupCmd, GroupSource, PolyCmd, RepArgs,
    RepCmd, SearchCmd,
};

pub fn run(cmd: &Command, r: &mut Report) -> Outcome {
    match cmd {
        Command::Forms(c) => forms(c, r),
        Command::Group(c) => group(c, r),
        Command::Search(c) => search(c, r),
        Command::Rep(c) => rep(c, r),
        Command::Poly(c) => poly(c, r),
        Command::Bounds(c) => bounds(c, r),
        Command::Audit(c) => audit(c, r),
    }
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn subspace_value(s: &Subspace) -> Value {
    json!({
        "ambient_dim": s.ambient_dim(),
        "dim": s.dim(),
        "basis": s.basis().iter().map(BitVector::to_string01).collect::<Vec<_>>(),
    })
}

fn forms(cmd: &FormsCmd, r: &mut Report) -> Outcome {
    match cmd {
        FormsCmd::Gen { n, t } => {
            r.command = "forms gen".into();
            r.inputs = json!({ "n": n, "t": t, "seed": r.seed });
            let fam = random_family(*n, *t, r.seed)?;
            r.summary = format!("forms gen: n={n} t={t} seed={}", r.seed);
            Ok(json!({ "family": tj::family_to_value(&fam) }))
        }
        FormsCmd::Czero(CzeroArgs { system, q, v }) => {
            r.command = "forms czero".into();
            let sys = match (system, q, v) {
                (Some(p), _, _) => {
                    r.inputs = json!({ "system": path_str(p) });
                    tj::load_system(p)?
                }
                (None, Some(q), Some(v)) => {
                    r.inputs = json!({ "q": q, "v": v, "seed": r.seed });
                    QuadraticSystem::random_homogeneous(*q, *v, r.seed)
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "give --system or both --q and --v".into(),
                    ))
                }
            };
            let zero = common_zero_quadratics(&sys)?;
            r.summary = match &zero {
                Some(x) => format!("forms czero: common zero {x}"),
                None => "forms czero: no nonzero common zero".into(),
            };
            Ok(json!({
                "system": tj::system_to_value(&sys),
                "zero": zero.map(|x| x.to_string01()),
            }))
        }
    }
}

fn group(cmd: &GroupCmd, r: &mut Report) -> Outcome {
    match cmd {
        GroupCmd::Info(f) => {
            r.command = "group info".into();
            r.inputs = json!({ "family": path_str(&f.family) });
            let g = PhiGroup::new(tj::load_family(&f.family)?);
            let c = center(&g);
            let two_central = tworank::phigroup::is_two_central(&g)?;
            r.summary = format!(
                "group info: order 2^{}, center order 2^{}",
                g.order_exponent(),
                c.order_exponent
            );
            Ok(json!({
                "n": g.n(),
                "t": g.t(),
                "order_exponent": g.order_exponent(),
                "center": {
                    "radical": subspace_value(&c.radical),
                    "order_exponent": c.order_exponent,
                    "involution_radical": subspace_value(&c.involution_radical),
                    "elementary_rank": c.elementary_rank,
                    "has_order_four": c.has_order_four,
                },
                "two_central": two_central,
            }))
        }
        GroupCmd::Rank { family, mode } => {
            r.command = "group rank".into();
            let mode = (*mode).into();
            r.inputs =
                json!({ "family": path_str(&family.family), "mode": SearchMode::name(mode) });
            let g = PhiGroup::new(tj::load_family(&family.family)?);
            let iso = max_isotropic_qzero(g.family(), mode)?;
            let rank = g.t() + iso.dim;
            r.summary = format!("group rank: {rank}");
            Ok(json!({
                "rank": rank,
                "t": g.t(),
                "isotropic_dim": iso.dim,
                "witness": subspace_value(&iso.witness),
            }))
        }
        GroupCmd::Profile { family, mode } => {
            r.command = "group profile".into();
            let mode = (*mode).into();
            r.inputs =
                json!({ "family": path_str(&family.family), "mode": SearchMode::name(mode) });
            let g = PhiGroup::new(tj::load_family(&family.family)?);
            let p = extension_profile(&g, mode)?;
            r.summary = format!("group profile: T={} N={}", p.kernel_rank, p.quotient_rank);
            Ok(json!({
                "T": p.kernel_rank,
                "N": p.quotient_rank,
                "v_witness": subspace_value(&p.v_witness),
            }))
        }
    }
}

fn search(cmd: &SearchCmd, r: &mut Report) -> Outcome {
    let SearchCmd::Olshanskii { n, t, k, trials } = cmd;
    r.command = "search olshanskii".into();
    r.inputs = json!({ "n": n, "t": t, "k": k, "trials": trials, "seed": r.seed });
    r.trials = Some(*trials);
    let out = search_forms(*n, *t, *k, *trials, r.seed)?;
    let mut result = json!({
        "condition_holds": out.condition_holds,
        "found": out.found.as_ref().map(|f| json!({
            "trial_index": f.trial_index,
            "trial_seed": f.trial_seed.to_string(),
            "max_isotropic_dim": f.max_isotropic_dim,
            "rank": out.t + f.max_isotropic_dim,
            "family": tj::family_to_value(&f.family),
        })),
    });
    if let Some(e) = &out.guard {
        if let Error::GuardExceeded { guard, .. } = e {
            r.guards_hit.push(guard.to_string());
        }
        result["guard"] = error_object(e);
        r.summary = format!("search olshanskii: not searched, {e}");
    } else {
        r.summary = match &out.found {
            Some(f) => format!(
                "search olshanskii: trial {} has rank {}",
                f.trial_index,
                out.t + f.max_isotropic_dim
            ),
            None => format!("search olshanskii: no family in {trials} trials"),
        };
    }
    Ok(result)
}

fn load_group(src: &GroupSource) -> Result<(GroupOracle, Value)> {
    match (&src.table, &src.family) {
        (Some(p), None) => Ok((tj::load_table(p)?, json!({ "table": path_str(p) }))),
        (None, Some(p)) => {
            let g = PhiGroup::new(tj::load_family(p)?);
            Ok((GroupOracle::from_phi(&g)?, json!({ "family": path_str(p) })))
        }
        _ => Err(Error::InvalidArgument(
            "give exactly one of --table, --family".into(),
        )),
    }
}

fn parse_ids(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse()
                .map_err(|_| Error::InvalidArgument(format!("`{x}` is not an element id")))
        })
        .collect()
}

/// `gens:chars`, e.g. `1,2:-1,1`; `:` alone is the regular representation.
fn parse_rep_spec(s: &str) -> Result<(Vec<usize>, Vec<i8>)> {
    let (gens, chars) = s.split_once(':').ok_or_else(|| {
        Error::InvalidArgument(format!("rep `{s}` is not of the form gens:chars"))
    })?;
    let gens = parse_ids(gens)?;
    let chars = chars
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| match x {
            "1" | "+1" => Ok(1),
            "-1" => Ok(-1),
            _ => Err(Error::InvalidArgument(format!(
                "character value `{x}` is not ±1"
            ))),
        })
        .collect::<Result<Vec<i8>>>()?;
    Ok((gens, chars))
}

fn build_reps<'g>(g: &'g GroupOracle, specs: &[String]) -> Result<Vec<MonomialRep<'g>>> {
    specs
        .iter()
        .map(|s| {
            let (gens, chars) = parse_rep_spec(s)?;
            build_induced(g, &gens, &chars)
        })
        .collect()
}

fn rep_inputs(src: Value, args: &RepArgs) -> Value {
    let mut v = src;
    v["reps"] = json!(args.reps);
    v
}

fn rep(cmd: &RepCmd, r: &mut Report) -> Outcome {
    match cmd {
        RepCmd::Free(args) => {
            r.command = "rep free".into();
            let (g, src) = load_group(&args.source)?;
            r.inputs = rep_inputs(src, args);
            let reps = build_reps(&g, &args.reps)?;
            let v = is_free_on_product(&g, &reps)?;
            r.summary = match v.witness {
                None => "rep free: free".into(),
                Some(w) => format!("rep free: not free, element {w} fixes a point"),
            };
            Ok(json!({
                "order": g.order(),
                "dims": reps.iter().map(MonomialRep::dim).collect::<Vec<_>>(),
                "free": v.free,
                "witness": v.witness,
            }))
        }
        RepCmd::Isotropy(args) => {
            r.command = "rep isotropy".into();
            let (g, src) = load_group(&args.source)?;
            r.inputs = rep_inputs(src, args);
            let reps = build_reps(&g, &args.reps)?;
            let iso = max_isotropy_rank(&g, &reps)?;
            r.summary = format!("rep isotropy: rank {}", iso.rank);
            Ok(json!({ "rank": iso.rank, "basis": iso.basis, "elements": iso.elements }))
        }
        RepCmd::Twocentral { source } => {
            r.command = "rep twocentral".into();
            let (g, src) = load_group(source)?;
            r.inputs = src;
            let tc = is_two_central(&g);
            r.summary = format!("rep twocentral: {tc}");
            Ok(json!({ "order": g.order(), "two_central": tc }))
        }
    }
}

fn class_value(c: &EulerClass) -> Value {
    match c {
        EulerClass::Zero => json!({ "zero": true }),
        EulerClass::Class(p) => json!({ "zero": false, "poly": tj::poly_to_value(p) }),
    }
}

fn poly(cmd: &PolyCmd, r: &mut Report) -> Outcome {
    match cmd {
        PolyCmd::Hilbert { ideal, degree } => {
            r.command = "poly hilbert".into();
            r.inputs = json!({ "ideal": path_str(ideal), "degree": degree });
            let i = tj::load_ideal(ideal)?;
            let values = (0..=*degree)
                .map(|d| hilbert_function(&i, d))
                .collect::<Result<Vec<_>>>()?;
            r.summary = format!("poly hilbert: {values:?}");
            Ok(json!({ "values": values }))
        }
        PolyCmd::Regseq { ideal } => {
            r.command = "poly regseq".into();
            r.inputs = json!({ "ideal": path_str(ideal) });
            let i = tj::load_ideal(ideal)?;
            let regular = is_regular_sequence(&i)?;
            let total = quotient_total_dim(&i)?;
            r.summary = format!("poly regseq: {regular}");
            Ok(json!({ "regular": regular, "quotient_total_dim": total }))
        }
        PolyCmd::Euler { rep, subgroup } => {
            r.command = "poly euler".into();
            let (g, src) = load_group(&rep.source)?;
            let mut inputs = rep_inputs(src, rep);
            inputs["subgroup"] = json!(subgroup);
            r.inputs = inputs;
            let e_gens = parse_ids(subgroup)?;
            let reps = build_reps(&g, &rep.reps)?;
            let classes = reps
                .iter()
                .map(|p| {
                    euler_class_restriction(p, &e_gens).map(|e| {
                        json!({ "multiplicities": e.multiplicities, "class": class_value(&e.class) })
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let transgression = if reps.len() == e_gens.len() {
                let t = transgression_check(&g, &reps, &e_gens)?;
                r.summary = format!("poly euler: transgression check {}", t.verdict);
                json!({ "regular": t.regular, "verdict": t.verdict })
            } else {
                r.summary = format!("poly euler: {} classes", classes.len());
                Value::Null
            };
            Ok(json!({ "classes": classes, "transgression": transgression }))
        }
        PolyCmd::Powertest { action, ys, p } => {
            r.command = "poly powertest".into();
            r.inputs = json!({ "action": path_str(action), "ys": ys, "p": p });
            let act = tj::load_action(action)?;
            let forms = ys
                .split(',')
                .map(|s| BitVector::parse01(s.trim()).map(|v| GradedPoly::linear(&v)))
                .collect::<Result<Vec<_>>>()?;
            let res = power_span_test(&act, &forms, *p)?;
            r.summary = format!(
                "poly powertest: stable={} permuted={}",
                res.stable, res.permuted
            );
            Ok(json!({ "stable": res.stable, "permuted": res.permuted }))
        }
    }
}

fn bounds(cmd: &BoundsCmd, r: &mut Report) -> Outcome {
    match cmd {
        BoundsCmd::RpRank { m, n } => {
            r.command = "bounds rp-rank".into();
            r.inputs = json!({ "m": m, "n": n });
            if *m == 0 || *n == 0 {
                return Err(Error::InvalidArgument("m and n must be positive".into()));
            }
            let f = free_rank_rp(*m, *n);
            r.summary = format!("bounds rp-rank: {}", f.value);
            Ok(json!({ "free_rank": f.value, "small_sphere_caveat": f.small_sphere_caveat }))
        }
        BoundsCmd::Headline { n, t, k } => {
            r.command = "bounds headline".into();
            r.inputs = json!({ "n": n, "t": t, "k": k });
            let h = headline_report(*n, *t, *k)?;
            r.summary = format!(
                "bounds headline: T<={} N>={} sphere dim 2^{}-1",
                h.t_bound,
                h.n_bound,
                n + t - 1
            );
            Ok(json!({
                "condition_holds": h.condition_holds,
                "T_bound": h.t_bound,
                "N_bound": h.n_bound,
                "sphere_dim": h.sphere_dim.to_string(),
                "sphere_dim_log2_plus_one": n + t - 1,
                "browder_min_m": h.browder_min_m,
                "carlsson_min_m": {
                    "exact": h.carlsson_min_m.exact.to_string(),
                    "paper_weak": h.carlsson_min_m.paper_weak.to_string(),
                },
                "small_sphere_caveat": h.small_sphere_caveat,
            }))
        }
    }
}

fn audit(cmd: &AuditCmd, r: &mut Report) -> Outcome {
    match cmd {
        AuditCmd::Sn { n } => {
            r.command = "audit sn".into();
            r.inputs = json!({ "n": n });
            let a = perm_rank_audit(*n)?;
            r.summary = format!(
                "audit sn: {} over {} subgroups",
                if a.passed { "passed" } else { "FAILED" },
                a.subgroups_checked
            );
            Ok(json!({
                "passed": a.passed,
                "subgroups_checked": a.subgroups_checked,
                "worst": {
                    "rank": a.worst.rank,
                    "invariants_dim": a.worst.invariants_dim,
                    "slack": a.worst.slack,
                    "generators": a.worst.generators,
                },
            }))
        }
        AuditCmd::Gl { n } => {
            r.command = "audit gl".into();
            r.inputs = json!({ "n": n });
            let a = gl_rank_audit(*n)?;
            r.summary = format!("audit gl: max rank {} <= {}", a.max_rank, a.bound);
            Ok(json!({
                "passed": a.passed,
                "max_rank": a.max_rank,
                "bound": a.bound,
                "witness": a.witness.iter().map(tj::matrix_to_value).collect::<Vec<_>>(),
            }))
        }
    }
}
