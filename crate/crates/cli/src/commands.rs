//! `validate`, `analyze` and `morita`.

use clap::ValueEnum;
use graded_morita::{
    build_canonical_context, build_graded_context, centralizer, check_algebra_over_c, check_bimodule,
    check_bimodule_over_c, check_context, check_g_acted_algebra, check_graded_algebra, check_module,
    default_samples, dual_module, end_op_algebra, hom_graded, identity_component, is_progenerator,
    is_surjective_context, pairing_maps, stabilizer, verify_morita_one, verify_morita_two, witnesses_from_context,
    AlgebraOverC, Error, GradedModule, MoritaContext, Sample, Status,
};
use serde_json::{json, Value};

use crate::report::Report;
use crate::workspace::{matrix_json, Kind, Workspace};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Analysis {
    Centralizer,
    Stabilizer,
    Hom,
    Endop,
    Dual,
    Context,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Check,
    Surjective,
    Morita1,
    Morita2,
}

/// Runs the checker matching the kind of `target`.
pub fn validate(ws: &Workspace, target: &str) -> Result<Report, CliError> {
    let (kind, key) = ws.resolve(target)?;
    let mut report = Report::new(Vec::new());
    match kind {
        Kind::Group => {
            let g = &ws.groups[&key];
            report.push("Group", "", Status::Pass, Value::Null);
            report.result = Some(json!({"order": g.order(), "abelian": g.is_abelian(), "labels": g.labels()}));
        }
        Kind::Algebra => {
            let a = &ws.algebras[&key];
            report.absorb("", &check_graded_algebra(a));
            report.result = Some(json!({"dim": a.dim(), "dims": a.component_dims()}));
        }
        Kind::Module => report.absorb("", &check_module(&ws.modules[&key])),
        Kind::Bimodule => {
            let entry = &ws.bimodules[&key];
            match &entry.over_c {
                Some(b) => report.absorb("", &check_bimodule_over_c(b)),
                None => report.absorb("", &check_bimodule(&entry.bimodule)),
            }
        }
        Kind::Action => report.absorb("", &check_g_acted_algebra(&ws.actions[&key])),
        Kind::Zeta => report.absorb("", &check_algebra_over_c(&ws.zetas[&key])),
        Kind::Context => report.absorb("", &check_context(&ws.contexts[&key])),
    }
    Ok(report.finish())
}

/// A module key, or an algebra key standing for its left regular module.
fn module_for(ws: &Workspace, target: &str) -> Result<(String, GradedModule), CliError> {
    match ws.resolve(target)? {
        (Kind::Module, key) => Ok((key.clone(), ws.modules[&key].clone())),
        (Kind::Algebra, key) => Ok((key.clone(), GradedModule::regular_left(&ws.algebras[&key]))),
        (kind, key) => Err(CliError::KindMismatch(format!("{kind} {key:?} is not a module"))),
    }
}

/// Computes `what` for `object`, adding derived objects to `ws`.
pub fn analyze(ws: &mut Workspace, object: &str, what: Analysis, with: Option<&str>) -> Result<Report, CliError> {
    let mut report = Report::new(Vec::new());
    match what {
        Analysis::Centralizer => {
            let key = match ws.resolve(object)? {
                (Kind::Algebra, key) => key,
                (kind, key) => return Err(CliError::KindMismatch(format!("{kind} {key:?} is not an algebra"))),
            };
            let a = ws.algebras[&key].clone();
            let emb = centralizer(&a, &identity_component(&a)?)?;
            let basis: Vec<String> = emb.vectors().iter().map(|v| a.format(v)).collect();
            let mut result = json!({"dims": emb.sub().component_dims(), "basis": basis});
            match AlgebraOverC::over_centralizer(&a) {
                Ok(x) => {
                    report.absorb("Miyashita", &check_g_acted_algebra(x.c()));
                    report.absorb("Zeta", &check_algebra_over_c(&x));
                    ws.insert_algebra(&format!("{key}.centralizer"), x.c().algebra());
                    ws.insert_action(&format!("{key}.miyashita"), x.c())?;
                    ws.insert_zeta(&format!("{key}.over_centralizer"), &format!("{key}.miyashita"), &x)?;
                    result["crossed_product"] = json!(true);
                }
                Err(Error::NotCrossedProduct(_)) => {
                    ws.insert_algebra(&format!("{key}.centralizer"), emb.sub());
                    result["crossed_product"] = json!(false);
                }
                Err(e) => return Err(e.into()),
            }
            report.result = Some(result);
        }
        Analysis::Stabilizer => {
            let (_, m) = module_for(ws, object)?;
            let st = stabilizer(&m)?;
            report.result = Some(json!({
                "members": st.labels(),
                "order": st.order(),
                "whole_group": st.is_whole_group(),
            }));
        }
        Analysis::Hom => {
            let (_, m) = module_for(ws, object)?;
            let n = match with {
                Some(w) => module_for(ws, w)?.1,
                None => m.clone(),
            };
            if m.algebra() != n.algebra() || m.side() != n.side() {
                return Err(CliError::KindMismatch("Hom needs two modules on the same side of one algebra".into()));
            }
            let h = hom_graded(&m, &n)?;
            let grp = m.group();
            let basis: Vec<Value> = h
                .basis()
                .iter()
                .zip(h.degrees())
                .map(|(f, &g)| json!({"degree": grp.label(g), "matrix": matrix_json(f)}))
                .collect();
            report.result = Some(json!({"dim": h.dim(), "dims": h.dims_per_degree(), "basis": basis}));
        }
        Analysis::Endop => {
            let (key, m) = module_for(ws, object)?;
            let endo = end_op_algebra(&m)?;
            report.absorb("EndOp", &check_graded_algebra(endo.algebra()));
            report.absorb("P", &check_bimodule(endo.bimodule()));
            ws.insert_algebra(&format!("{key}.endop"), endo.algebra());
            ws.insert_bimodule(&format!("{key}.p"), endo.bimodule(), None)?;
            let b = endo.algebra();
            let basis: Vec<String> = (0..b.dim()).map(|i| format!("{} ({})", b.label(i), b.group().label(b.degree(i)))).collect();
            report.result = Some(json!({"dim": b.dim(), "dims": b.component_dims(), "basis": basis}));
        }
        Analysis::Dual => {
            let (key, m) = module_for(ws, object)?;
            let endo = end_op_algebra(&m)?;
            let dual = dual_module(&m)?;
            report.absorb("Dual", &check_bimodule(&dual));
            ws.insert_algebra(&format!("{key}.endop"), endo.algebra());
            ws.insert_bimodule(&format!("{key}.dual"), &dual, None)?;
            report.result = Some(json!({"dim": dual.dim(), "dims": dual.component_dims()}));
        }
        Analysis::Context => {
            let (key, m) = module_for(ws, object)?;
            let a = m.algebra().clone();
            let canonical = if stabilizer(&m)?.is_whole_group() {
                match AlgebraOverC::over_centralizer(&a) {
                    Ok(x) => Some(x),
                    Err(Error::NotCrossedProduct(_)) => None,
                    Err(e) => return Err(e.into()),
                }
            } else {
                None
            };
            let ctx = match &canonical {
                Some(x) => build_canonical_context(x, &m)?,
                None => build_graded_context(&m)?,
            };
            insert_context(ws, &key, &format!("{key}.ctx"), &ctx)?;
            report.absorb("", &check_context(&ctx));
            report.result = Some(json!({
                "canonical": canonical.is_some(),
                "surjective": is_surjective_context(&ctx),
                "progenerator": is_progenerator(&m),
                "dims": {
                    "A′": ctx.a_prime().component_dims(),
                    "M̃": ctx.m().component_dims(),
                    "M̃′": ctx.m_prime().component_dims(),
                },
                "context": format!("{key}.ctx"),
            }));
        }
    }
    Ok(report.finish())
}

/// Adds a context as `name` and everything it refers to under keys prefixed
/// by `key`.
pub fn insert_context(ws: &mut Workspace, key: &str, name: &str, ctx: &MoritaContext) -> Result<(), CliError> {
    ws.insert_algebra(&format!("{key}.endop"), ctx.a_prime());
    let pair = match ctx.over_c() {
        Some((x, xp)) => {
            let (action, zx, zxp) = (format!("{key}.c"), format!("{key}.zeta"), format!("{key}.endop_zeta"));
            ws.insert_algebra(&format!("{key}.c_algebra"), x.c().algebra());
            ws.insert_action(&action, x.c())?;
            ws.insert_zeta(&zx, &action, x)?;
            ws.insert_zeta(&zxp, &action, xp)?;
            Some((zx, zxp))
        }
        None => None,
    };
    let (m, mp) = (format!("{key}.m"), format!("{key}.m_prime"));
    let pair_ref = pair.as_ref().map(|(x, y)| (x.as_str(), y.as_str()));
    ws.insert_bimodule(&m, ctx.m(), pair_ref)?;
    ws.insert_bimodule(&mp, ctx.m_prime(), pair_ref.map(|(x, y)| (y, x)))?;
    ws.insert_context(name, &m, &mp, ctx, pair_ref);
    Ok(())
}

/// Runs one verification tier on a context.
pub fn morita(ws: &Workspace, target: &str, level: Level, samples: Option<&[String]>) -> Result<Report, CliError> {
    let ctx = match ws.resolve(target)? {
        (Kind::Context, key) => &ws.contexts[&key],
        (kind, key) => return Err(CliError::KindMismatch(format!("{kind} {key:?} is not a context"))),
    };
    let samples = match samples {
        None => default_samples(ctx),
        Some(keys) => keys
            .iter()
            .map(|k| {
                let (key, m) = module_for(ws, k)?;
                if m.algebra() != ctx.a() || m.side() != graded_morita::Side::Left {
                    return Err(CliError::KindMismatch(format!("sample {key:?} is not a left module over A")));
                }
                Ok(Sample::new(key, m))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    let mut report = Report::new(Vec::new());
    match level {
        Level::Check => report.absorb("", &check_context(ctx)),
        Level::Surjective => {
            surjectivity(&mut report, ctx);
            report.result = Some(json!({ "surjective": report.is_pass() }));
        }
        Level::Morita1 => match verify_morita_one(ctx, &samples) {
            Ok(r) => report.absorb("", &r),
            Err(Error::NotSurjective) => surjectivity(&mut report, ctx),
            Err(e) => return Err(e.into()),
        },
        Level::Morita2 => {
            let (qf, qg, w) = witnesses_from_context(ctx)?;
            match verify_morita_two(&qf, &qg, &w, &samples) {
                Ok(r) => report.absorb("", &r),
                Err(e @ Error::WitnessNotIso(_)) => {
                    surjectivity(&mut report, ctx);
                    report.push("Witnesses", "QF∘QG ≅ 1, QG∘QF ≅ 1", Status::Fail, json!({"error": e.to_string()}));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(report.finish())
}

fn surjectivity(report: &mut Report, ctx: &MoritaContext) {
    match pairing_maps(ctx) {
        Ok(((t, f), (tp, g))) => {
            for (name, law, map, dim, target) in [
                ("Surjective.f", "f: M̃ ⊗_A′ M̃′ ≅ A", &f, t.dim(), ctx.a().dim()),
                ("Surjective.g", "g: M̃′ ⊗_A M̃ ≅ A′", &g, tp.dim(), ctx.a_prime().dim()),
            ] {
                let ok = map.is_square() && map.is_invertible();
                let witness = json!({"tensor_dim": dim, "target_dim": target, "rank": map.rank()});
                report.push(name, law, if ok { Status::Pass } else { Status::Fail }, if ok { Value::Null } else { witness });
            }
        }
        Err(e) => report.push("Surjective", "", Status::Fail, json!({ "error": e.to_string() })),
    }
}
