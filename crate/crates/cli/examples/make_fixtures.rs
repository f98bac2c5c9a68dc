//! Writes the workspace files under `fixtures/`.
//!
//! cargo run -p graded-morita-cli --example make_fixtures -- fixtures

use std::path::PathBuf;

use graded_morita::fixtures::{column_module, e1, e2, e3, p3, regular};
use graded_morita::{build_canonical_context, AlgebraOverC, GradedAlgebra, MoritaContext};
use graded_morita_cli::{insert_context, CliError, Workspace};

fn base(a: &GradedAlgebra) -> Workspace {
    let mut ws = Workspace::empty(a.field());
    ws.insert_group("C2", a.group());
    ws.insert_algebra("A", a);
    ws
}

fn with_context(a: &GradedAlgebra, ctx: &MoritaContext) -> Result<Workspace, CliError> {
    let mut ws = base(a);
    insert_context(&mut ws, "P", "ctx", ctx)?;
    Ok(ws)
}

fn canonical(a: &GradedAlgebra) -> MoritaContext {
    let x = AlgebraOverC::over_centralizer(a).expect("crossed product");
    build_canonical_context(&x, &regular(a)).expect("canonical context")
}

fn main() -> Result<(), CliError> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(e.to_string()))?;

    base(&e1()).write(&dir.join("e1.json"))?;

    let mut ws = base(&e2());
    ws.insert_module("V", &column_module())?;
    ws.write(&dir.join("e2.json"))?;

    let mut ws = base(&e3());
    ws.insert_module("P3", &p3())?;
    ws.write(&dir.join("e3.json"))?;

    let ctx1 = canonical(&e1());
    with_context(&e1(), &ctx1)?.write(&dir.join("e1-ctx.json"))?;
    with_context(&e2(), &canonical(&e2()))?.write(&dir.join("e2-ctx.json"))?;
    with_context(&e1(), &ctx1.with_zero_pairings())?.write(&dir.join("zero-f.json"))?;

    let mut v = ctx1.g()[0][0].clone();
    v[0] = &v[0] + &ctx1.a_prime().field().one();
    let broken = ctx1.with_g_value(0, 0, v)?;
    with_context(&e1(), &broken)?.write(&dir.join("broken-assoc.json"))?;
    Ok(())
}
