//! One-file JSON workspaces: named groups, algebras, modules, bimodules,
//! G-actions, structure maps over `C` and Morita contexts that refer to each
//! other by key.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use graded_morita::{
    AlgebraOverC, BimoduleOverC, CrossedProductData, Field, FiniteGroup, GActedAlgebra, GradedAlgebra,
    GradedBimodule, GradedModule, GroupElt, Matrix, MoritaContext, Scalar, Side,
};
use serde_json::{json, Map, Value};

use crate::CliError;

/// The kinds of named objects a workspace holds, in lookup order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Group,
    Algebra,
    Module,
    Bimodule,
    Action,
    Zeta,
    Context,
}

impl Kind {
    pub const ALL: [Kind; 7] = [
        Kind::Group,
        Kind::Algebra,
        Kind::Module,
        Kind::Bimodule,
        Kind::Action,
        Kind::Zeta,
        Kind::Context,
    ];

    pub fn section(self) -> &'static str {
        match self {
            Kind::Group => "groups",
            Kind::Algebra => "algebras",
            Kind::Module => "modules",
            Kind::Bimodule => "bimodules",
            Kind::Action => "actions",
            Kind::Zeta => "zetas",
            Kind::Context => "contexts",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.to_string() == s)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Group => "group",
            Kind::Algebra => "algebra",
            Kind::Module => "module",
            Kind::Bimodule => "bimodule",
            Kind::Action => "action",
            Kind::Zeta => "zeta",
            Kind::Context => "context",
        };
        f.write_str(s)
    }
}

/// A bimodule with the keys of its structure maps over `C`, if any.
#[derive(Clone, Debug)]
pub struct BimoduleEntry {
    pub bimodule: GradedBimodule,
    pub over_c: Option<BimoduleOverC>,
}

#[derive(Clone, Debug)]
pub struct Workspace {
    raw: Map<String, Value>,
    pub field: Field,
    pub groups: BTreeMap<String, FiniteGroup>,
    pub algebras: BTreeMap<String, GradedAlgebra>,
    pub modules: BTreeMap<String, GradedModule>,
    pub bimodules: BTreeMap<String, BimoduleEntry>,
    pub actions: BTreeMap<String, GActedAlgebra>,
    pub zetas: BTreeMap<String, AlgebraOverC>,
    pub contexts: BTreeMap<String, MoritaContext>,
    /// Group reference (key or inline JSON) each algebra was declared with.
    algebra_groups: BTreeMap<String, Value>,
}

fn parse_err(what: impl fmt::Display, e: impl fmt::Display) -> CliError {
    CliError::Parse(format!("{what}: {e}"))
}

fn get<'a>(obj: &'a Value, field: &str, what: &str) -> Result<&'a Value, CliError> {
    obj.get(field)
        .ok_or_else(|| CliError::Parse(format!("{what}: missing field {field:?}")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str, CliError> {
    v.as_str().ok_or_else(|| CliError::Parse(format!("{what}: expected a string")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| CliError::Parse(format!("{what}: expected an array")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize, CliError> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| CliError::Parse(format!("{what}: expected a non-negative integer")))
}

fn scalar(field: Field, v: &Value, what: &str) -> Result<Scalar, CliError> {
    match v {
        Value::String(s) => field.parse_scalar(s).map_err(|e| parse_err(what, e)),
        Value::Number(n) => n
            .as_i64()
            .map(|n| field.from_i64(n))
            .ok_or_else(|| CliError::Parse(format!("{what}: scalars must be integers or strings"))),
        _ => Err(CliError::Parse(format!("{what}: bad scalar {v}"))),
    }
}

fn vector(field: Field, v: &Value, len: usize, what: &str) -> Result<Vec<Scalar>, CliError> {
    let items = as_array(v, what)?;
    if items.len() != len {
        return Err(CliError::Parse(format!("{what}: expected {len} entries, got {}", items.len())));
    }
    items.iter().map(|x| scalar(field, x, what)).collect()
}

fn matrix(field: Field, v: &Value, rows: usize, cols: usize, what: &str) -> Result<Matrix, CliError> {
    let items = as_array(v, what)?;
    if items.len() != rows {
        return Err(CliError::Parse(format!("{what}: expected {rows} rows, got {}", items.len())));
    }
    let rows = items
        .iter()
        .map(|r| vector(field, r, cols, what))
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(field, 0, cols));
    }
    Matrix::from_rows(field, rows).map_err(|e| parse_err(what, e))
}

fn matrices(field: Field, v: &Value, count: usize, rows: usize, cols: usize, what: &str) -> Result<Vec<Matrix>, CliError> {
    let items = as_array(v, what)?;
    if items.len() != count {
        return Err(CliError::Parse(format!("{what}: expected {count} matrices, got {}", items.len())));
    }
    items.iter().map(|m| matrix(field, m, rows, cols, what)).collect()
}

fn tensor(field: Field, v: &Value, dims: (usize, usize, usize), what: &str) -> Result<Vec<Vec<Vec<Scalar>>>, CliError> {
    let items = as_array(v, what)?;
    if items.len() != dims.0 {
        return Err(CliError::Parse(format!("{what}: expected {} rows, got {}", dims.0, items.len())));
    }
    items
        .iter()
        .map(|row| {
            let row = as_array(row, what)?;
            if row.len() != dims.1 {
                return Err(CliError::Parse(format!("{what}: expected {} entries per row", dims.1)));
            }
            row.iter().map(|x| vector(field, x, dims.2, what)).collect()
        })
        .collect()
}

fn labels(v: Option<&Value>, len: usize, what: &str) -> Result<Option<Vec<String>>, CliError> {
    let Some(v) = v else { return Ok(None) };
    let items = as_array(v, what)?;
    if items.len() != len {
        return Err(CliError::Parse(format!("{what}: expected {len} labels")));
    }
    items
        .iter()
        .map(|x| as_str(x, what).map(String::from))
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn degrees(group: &FiniteGroup, v: &Value, len: usize, what: &str) -> Result<Vec<GroupElt>, CliError> {
    let items = as_array(v, what)?;
    if items.len() != len {
        return Err(CliError::Parse(format!("{what}: expected {len} degrees, got {}", items.len())));
    }
    items
        .iter()
        .map(|d| match d {
            Value::String(s) => group
                .parse_element(s)
                .ok_or_else(|| CliError::Parse(format!("{what}: unknown group element {s:?}"))),
            _ => {
                let g = as_usize(d, what)?;
                if g < group.order() {
                    Ok(g)
                } else {
                    Err(CliError::Parse(format!("{what}: degree {g} out of range")))
                }
            }
        })
        .collect()
}

fn parse_group(v: &Value, what: &str) -> Result<FiniteGroup, CliError> {
    let order = as_usize(get(v, "order", what)?, what)?;
    let rows = as_array(get(v, "table", what)?, what)?;
    let table = rows
        .iter()
        .map(|r| as_array(r, what)?.iter().map(|x| as_usize(x, what)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if table.len() != order {
        return Err(CliError::Parse(format!("{what}: table has {} rows for order {order}", table.len())));
    }
    let labels = labels(v.get("labels"), order, what)?;
    FiniteGroup::new(table, labels).map_err(|e| parse_err(what, e))
}

fn reference<'a>(v: &'a Value, field: &str, what: &str) -> Result<&'a str, CliError> {
    as_str(get(v, field, what)?, what)
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, key: &str, kind: Kind, from: &str) -> Result<&'a T, CliError> {
    map.get(key)
        .ok_or_else(|| CliError::UnknownKey(format!("{from} refers to unknown {kind} {key:?}")))
}

impl Workspace {
    pub fn load(path: &Path, field: Option<Field>) -> Result<Workspace, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| parse_err(path.display(), e))?;
        Workspace::from_str(&text, field)
    }

    /// Parses a workspace. `field` overrides the workspace default field.
    pub fn from_str(text: &str, field: Option<Field>) -> Result<Workspace, CliError> {
        let value: Value = serde_json::from_str(text).map_err(|e| parse_err("workspace", e))?;
        let Value::Object(raw) = value else {
            return Err(CliError::Parse("workspace must be a JSON object".into()));
        };
        let default_field = match (field, raw.get("field")) {
            (Some(f), _) => f,
            (None, Some(v)) => Field::parse(as_str(v, "field")?).map_err(|e| parse_err("field", e))?,
            (None, None) => Field::Rational,
        };
        let mut ws = Workspace {
            raw,
            field: default_field,
            groups: BTreeMap::new(),
            algebras: BTreeMap::new(),
            modules: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            actions: BTreeMap::new(),
            zetas: BTreeMap::new(),
            contexts: BTreeMap::new(),
            algebra_groups: BTreeMap::new(),
        };
        for key in ws.raw.keys() {
            if key != "field" && !Kind::ALL.iter().any(|k| k.section() == key) {
                return Err(CliError::Parse(format!("unknown workspace section {key:?}")));
            }
        }
        for (key, v) in ws.section(Kind::Group)? {
            let g = parse_group(&v, &format!("group {key:?}"))?;
            ws.groups.insert(key, g);
        }
        for (key, v) in ws.section(Kind::Algebra)? {
            let a = ws.parse_algebra(&key, &v)?;
            ws.algebra_groups.insert(key.clone(), v.get("group").cloned().unwrap_or(Value::Null));
            ws.algebras.insert(key, a);
        }
        for (key, v) in ws.section(Kind::Module)? {
            let m = ws.parse_module(&key, &v)?;
            ws.modules.insert(key, m);
        }
        for (key, v) in ws.section(Kind::Action)? {
            let a = ws.parse_action(&key, &v)?;
            ws.actions.insert(key, a);
        }
        for (key, v) in ws.section(Kind::Zeta)? {
            let z = ws.parse_zeta(&key, &v)?;
            ws.zetas.insert(key, z);
        }
        for (key, v) in ws.section(Kind::Bimodule)? {
            let b = ws.parse_bimodule(&key, &v)?;
            ws.bimodules.insert(key, b);
        }
        for (key, v) in ws.section(Kind::Context)? {
            let c = ws.parse_context(&key, &v)?;
            ws.contexts.insert(key, c);
        }
        Ok(ws)
    }

    fn section(&self, kind: Kind) -> Result<Vec<(String, Value)>, CliError> {
        match self.raw.get(kind.section()) {
            None => Ok(Vec::new()),
            Some(Value::Object(m)) => Ok(m.iter().map(|(k, v)| (k.clone(), v.clone())).collect()),
            Some(_) => Err(CliError::Parse(format!("section {:?} must be an object", kind.section()))),
        }
    }

    fn field_of(&self, v: &Value, what: &str) -> Result<Field, CliError> {
        match v.get("field") {
            Some(f) => Field::parse(as_str(f, what)?).map_err(|e| parse_err(what, e)),
            None => Ok(self.field),
        }
    }

    fn parse_algebra(&self, key: &str, v: &Value) -> Result<GradedAlgebra, CliError> {
        let what = format!("algebra {key:?}");
        let group = match get(v, "group", &what)? {
            Value::String(g) => lookup(&self.groups, g, Kind::Group, &what)?.clone(),
            inline => parse_group(inline, &what)?,
        };
        let field = self.field_of(v, &what)?;
        let dim = as_usize(get(v, "dim", &what)?, &what)?;
        let deg = degrees(&group, get(v, "deg", &what)?, dim, &what)?;
        let table = tensor(field, get(v, "structconst", &what)?, (dim, dim, dim), &what)?;
        let unit = vector(field, get(v, "unit", &what)?, dim, &what)?;
        let names = labels(v.get("labels"), dim, &what)?
            .unwrap_or_else(|| (1..=dim).map(|i| format!("e{i}")).collect());
        GradedAlgebra::with_labels(group, field, deg, names, table, unit).map_err(|e| parse_err(&what, e))
    }

    fn parse_module(&self, key: &str, v: &Value) -> Result<GradedModule, CliError> {
        let what = format!("module {key:?}");
        let a = lookup(&self.algebras, reference(v, "algebra", &what)?, Kind::Algebra, &what)?;
        self.check_field(v, a.field(), &what)?;
        let dim = as_usize(get(v, "dim", &what)?, &what)?;
        let deg = degrees(a.group(), get(v, "deg", &what)?, dim, &what)?;
        let action = matrices(a.field(), get(v, "action", &what)?, a.dim(), dim, dim, &what)?;
        let side = match v.get("side").map(|s| as_str(s, &what)).transpose()? {
            None | Some("left") => Side::Left,
            Some("right") => Side::Right,
            Some(other) => return Err(CliError::Parse(format!("{what}: unknown side {other:?}"))),
        };
        let m = match side {
            Side::Left => GradedModule::left(a, deg, action),
            Side::Right => GradedModule::right(a, deg, action),
        }
        .map_err(|e| parse_err(&what, e))?;
        match labels(v.get("labels"), dim, &what)? {
            Some(l) => m.with_labels(l).map_err(|e| parse_err(&what, e)),
            None => Ok(m),
        }
    }

    fn check_field(&self, v: &Value, expected: Field, what: &str) -> Result<(), CliError> {
        if v.get("field").is_some() && self.field_of(v, what)? != expected {
            return Err(CliError::Parse(format!("{what}: field differs from its algebra ({expected})")));
        }
        Ok(())
    }

    fn parse_action(&self, key: &str, v: &Value) -> Result<GActedAlgebra, CliError> {
        let what = format!("action {key:?}");
        let c = lookup(&self.algebras, reference(v, "algebra", &what)?, Kind::Algebra, &what)?;
        let action = matrices(c.field(), get(v, "action", &what)?, c.group().order(), c.dim(), c.dim(), &what)?;
        GActedAlgebra::new(c.clone(), action).map_err(|e| parse_err(&what, e))
    }

    fn parse_zeta(&self, key: &str, v: &Value) -> Result<AlgebraOverC, CliError> {
        let what = format!("zeta {key:?}");
        let a = lookup(&self.algebras, reference(v, "algebra", &what)?, Kind::Algebra, &what)?;
        let c = lookup(&self.actions, reference(v, "c", &what)?, Kind::Action, &what)?;
        let zeta = matrix(a.field(), get(v, "zeta", &what)?, a.dim(), c.algebra().dim(), &what)?;
        let cp = match v.get("units") {
            Some(u) => {
                let units = as_array(u, &what)?
                    .iter()
                    .map(|x| vector(a.field(), x, a.dim(), &what))
                    .collect::<Result<Vec<_>, _>>()?;
                CrossedProductData::new(a, units)
            }
            None => CrossedProductData::find(a),
        }
        .map_err(|e| parse_err(&what, e))?;
        AlgebraOverC::new(c.clone(), cp, zeta).map_err(|e| parse_err(&what, e))
    }

    fn parse_bimodule(&self, key: &str, v: &Value) -> Result<BimoduleEntry, CliError> {
        let what = format!("bimodule {key:?}");
        let left = lookup(&self.algebras, reference(v, "left", &what)?, Kind::Algebra, &what)?;
        let right = lookup(&self.algebras, reference(v, "right", &what)?, Kind::Algebra, &what)?;
        let dim = as_usize(get(v, "dim", &what)?, &what)?;
        let deg = degrees(left.group(), get(v, "deg", &what)?, dim, &what)?;
        let la = matrices(left.field(), get(v, "left_action", &what)?, left.dim(), dim, dim, &what)?;
        let ra = matrices(right.field(), get(v, "right_action", &what)?, right.dim(), dim, dim, &what)?;
        let mut b = GradedBimodule::new(left.clone(), right.clone(), deg, la, ra).map_err(|e| parse_err(&what, e))?;
        if let Some(l) = labels(v.get("labels"), dim, &what)? {
            b = b.with_labels(l).map_err(|e| parse_err(&what, e))?;
        }
        let over_c = match v.get("over_c") {
            Some(pair) => {
                let (x, y) = self.zeta_pair(pair, &what)?;
                Some(BimoduleOverC::new(b.clone(), x, y).map_err(|e| parse_err(&what, e))?)
            }
            None => None,
        };
        Ok(BimoduleEntry { bimodule: b, over_c })
    }

    fn zeta_pair(&self, pair: &Value, what: &str) -> Result<(AlgebraOverC, AlgebraOverC), CliError> {
        let items = as_array(pair, what)?;
        if items.len() != 2 {
            return Err(CliError::Parse(format!("{what}: over_c must name two zetas")));
        }
        let x = lookup(&self.zetas, as_str(&items[0], what)?, Kind::Zeta, what)?;
        let y = lookup(&self.zetas, as_str(&items[1], what)?, Kind::Zeta, what)?;
        Ok((x.clone(), y.clone()))
    }

    fn parse_context(&self, key: &str, v: &Value) -> Result<MoritaContext, CliError> {
        let what = format!("context {key:?}");
        let m = &lookup(&self.bimodules, reference(v, "m", &what)?, Kind::Bimodule, &what)?.bimodule;
        let mp = &lookup(&self.bimodules, reference(v, "m_prime", &what)?, Kind::Bimodule, &what)?.bimodule;
        let (a, ap) = (m.left_algebra(), m.right_algebra());
        let f = tensor(a.field(), get(v, "f", &what)?, (m.dim(), mp.dim(), a.dim()), &what)?;
        let g = tensor(ap.field(), get(v, "g", &what)?, (mp.dim(), m.dim(), ap.dim()), &what)?;
        let over_c = v.get("over_c").map(|p| self.zeta_pair(p, &what)).transpose()?;
        MoritaContext::new(m.clone(), mp.clone(), f, g, over_c).map_err(|e| parse_err(&what, e))
    }

    /// Resolves `"kind:key"` or a bare key, trying kinds in lookup order.
    pub fn resolve(&self, target: &str) -> Result<(Kind, String), CliError> {
        if let Some((kind, key)) = target.split_once(':') {
            if let Some(kind) = Kind::parse(kind) {
                return if self.has(kind, key) {
                    Ok((kind, key.to_string()))
                } else {
                    Err(CliError::UnknownKey(format!("no {kind} named {key:?}")))
                };
            }
        }
        Kind::ALL
            .into_iter()
            .find(|&k| self.has(k, target))
            .map(|k| (k, target.to_string()))
            .ok_or_else(|| CliError::UnknownKey(format!("no object named {target:?}")))
    }

    pub fn has(&self, kind: Kind, key: &str) -> bool {
        match kind {
            Kind::Group => self.groups.contains_key(key),
            Kind::Algebra => self.algebras.contains_key(key),
            Kind::Module => self.modules.contains_key(key),
            Kind::Bimodule => self.bimodules.contains_key(key),
            Kind::Action => self.actions.contains_key(key),
            Kind::Zeta => self.zetas.contains_key(key),
            Kind::Context => self.contexts.contains_key(key),
        }
    }

    /// Key of an algebra in this workspace, by value.
    pub fn algebra_key(&self, a: &GradedAlgebra) -> Option<&str> {
        self.algebras.iter().find(|(_, b)| *b == a).map(|(k, _)| k.as_str())
    }

    fn group_ref(&self, a: &GradedAlgebra) -> Value {
        if let Some(key) = self.algebra_key(a) {
            if let Some(v) = self.algebra_groups.get(key) {
                return v.clone();
            }
        }
        match self.groups.iter().find(|(_, g)| *g == a.group()) {
            Some((k, _)) => Value::String(k.clone()),
            None => group_json(a.group()),
        }
    }

    /// Adds a derived object to the raw workspace (and to the typed maps).
    pub fn insert_algebra(&mut self, key: &str, a: &GradedAlgebra) {
        let group = self.group_ref(a);
        self.insert_raw(Kind::Algebra, key, algebra_json(a, group));
        self.algebra_groups.insert(key.into(), self.group_ref(a));
        self.algebras.insert(key.into(), a.clone());
    }

    pub fn insert_module(&mut self, key: &str, m: &GradedModule) -> Result<(), CliError> {
        let a = self.require_algebra(m.algebra())?;
        self.insert_raw(Kind::Module, key, module_json(m, &a));
        self.modules.insert(key.into(), m.clone());
        Ok(())
    }

    pub fn insert_action(&mut self, key: &str, c: &GActedAlgebra) -> Result<(), CliError> {
        let a = self.require_algebra(c.algebra())?;
        self.insert_raw(Kind::Action, key, action_json(c, &a));
        self.actions.insert(key.into(), c.clone());
        Ok(())
    }

    pub fn insert_zeta(&mut self, key: &str, action_key: &str, x: &AlgebraOverC) -> Result<(), CliError> {
        let a = self.require_algebra(x.algebra())?;
        self.insert_raw(Kind::Zeta, key, zeta_json(x, &a, action_key));
        self.zetas.insert(key.into(), x.clone());
        Ok(())
    }

    pub fn insert_bimodule(&mut self, key: &str, b: &GradedBimodule, over_c: Option<(&str, &str)>) -> Result<(), CliError> {
        let l = self.require_algebra(b.left_algebra())?;
        let r = self.require_algebra(b.right_algebra())?;
        let mut v = bimodule_json(b, &l, &r);
        let entry_over = match over_c {
            Some((x, y)) => {
                v["over_c"] = json!([x, y]);
                let (x, y) = (self.zetas[x].clone(), self.zetas[y].clone());
                Some(BimoduleOverC::new(b.clone(), x, y).map_err(|e| parse_err(key, e))?)
            }
            None => None,
        };
        self.insert_raw(Kind::Bimodule, key, v);
        self.bimodules.insert(
            key.into(),
            BimoduleEntry {
                bimodule: b.clone(),
                over_c: entry_over,
            },
        );
        Ok(())
    }

    pub fn insert_context(&mut self, key: &str, m: &str, mp: &str, ctx: &MoritaContext, over_c: Option<(&str, &str)>) {
        let mut v = json!({
            "m": m,
            "m_prime": mp,
            "f": tensor_json(ctx.f()),
            "g": tensor_json(ctx.g()),
        });
        if let Some((x, y)) = over_c {
            v["over_c"] = json!([x, y]);
        }
        self.insert_raw(Kind::Context, key, v);
        self.contexts.insert(key.into(), ctx.clone());
    }

    fn require_algebra(&self, a: &GradedAlgebra) -> Result<String, CliError> {
        self.algebra_key(a)
            .map(String::from)
            .ok_or_else(|| CliError::UnknownKey("derived object refers to an algebra missing from the workspace".into()))
    }

    fn insert_raw(&mut self, kind: Kind, key: &str, v: Value) {
        let section = self
            .raw
            .entry(kind.section())
            .or_insert_with(|| Value::Object(Map::new()));
        if let Value::Object(m) = section {
            m.insert(key.into(), v);
        }
    }

    pub fn to_json(&self) -> Value {
        let mut raw = self.raw.clone();
        raw.insert("field".into(), Value::String(self.field.to_string()));
        Value::Object(raw)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut text = String::new();
        write_json(&mut text, &self.to_json(), 0);
        std::fs::write(path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }

    /// An empty workspace over `field`.
    pub fn empty(field: Field) -> Workspace {
        Workspace::from_str("{}", Some(field)).expect("empty workspace")
    }

    pub fn insert_group(&mut self, key: &str, g: &FiniteGroup) {
        self.insert_raw(Kind::Group, key, group_json(g));
        self.groups.insert(key.into(), g.clone());
    }
}

/// Indented JSON with arrays of scalars kept on one line.
pub fn write_json(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    let leaf = |v: &Value| !matches!(v, Value::Array(_) | Value::Object(_));
    match v {
        Value::Array(items) if items.iter().all(leaf) => {
            out.push_str(&serde_json::to_string(v).expect("JSON values serialize"));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_json(out, item, indent + 1);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(key).expect("JSON values serialize"));
                out.push_str(": ");
                write_json(out, item, indent + 1);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("JSON values serialize")),
    }
}

pub fn scalar_json(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector_json(r)).collect())
}

fn tensor_json(t: &[Vec<Vec<Scalar>>]) -> Value {
    Value::Array(t.iter().map(|row| Value::Array(row.iter().map(|v| vector_json(v)).collect())).collect())
}

pub fn group_json(g: &FiniteGroup) -> Value {
    json!({ "order": g.order(), "table": g.table(), "labels": g.labels() })
}

pub fn algebra_json(a: &GradedAlgebra, group: Value) -> Value {
    json!({
        "group": group,
        "field": a.field().to_string(),
        "dim": a.dim(),
        "deg": a.degrees(),
        "labels": a.labels(),
        "structconst": tensor_json(a.table()),
        "unit": vector_json(a.unit()),
    })
}

pub fn module_json(m: &GradedModule, algebra: &str) -> Value {
    json!({
        "algebra": algebra,
        "side": m.side().to_string(),
        "dim": m.dim(),
        "deg": m.degrees(),
        "labels": m.labels(),
        "action": m.actions().iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

pub fn bimodule_json(b: &GradedBimodule, left: &str, right: &str) -> Value {
    json!({
        "left": left,
        "right": right,
        "dim": b.dim(),
        "deg": b.degrees(),
        "labels": b.labels(),
        "left_action": b.left_actions().iter().map(matrix_json).collect::<Vec<_>>(),
        "right_action": b.right_actions().iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

pub fn action_json(c: &GActedAlgebra, algebra: &str) -> Value {
    json!({
        "algebra": algebra,
        "action": c.actions().iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

pub fn zeta_json(x: &AlgebraOverC, algebra: &str, action: &str) -> Value {
    json!({
        "algebra": algebra,
        "c": action,
        "zeta": matrix_json(x.zeta()),
        "units": x.crossed_product().units().iter().map(|u| vector_json(u)).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use graded_morita::fixtures::{e1, p3};

    #[test]
    fn round_trip() {
        let mut ws = Workspace::empty(Field::Rational);
        let a = e1();
        ws.insert_group("C2", a.group());
        ws.insert_algebra("A", &a);
        ws.insert_module("A", &GradedModule::regular_left(&a)).unwrap();
        let text = serde_json::to_string(&ws.to_json()).unwrap();
        let back = Workspace::from_str(&text, None).unwrap();
        assert_eq!(back.algebras["A"], a);
        assert_eq!(back.modules["A"].actions(), GradedModule::regular_left(&a).actions());
        assert_eq!(back.resolve("module:A").unwrap(), (Kind::Module, "A".into()));
        assert_eq!(back.resolve("A").unwrap(), (Kind::Algebra, "A".into()));
        assert!(matches!(back.resolve("B"), Err(CliError::UnknownKey(_))));
    }

    #[test]
    fn prime_field_scalars() {
        let p = p3();
        let mut ws = Workspace::empty(Field::Prime(7));
        ws.insert_algebra("E3", p.algebra());
        ws.insert_module("P3", &p).unwrap();
        let text = serde_json::to_string(&ws.to_json()).unwrap();
        assert!(text.contains("mod 7"));
        let back = Workspace::from_str(&text, None).unwrap();
        assert_eq!(back.modules["P3"].actions(), p.actions());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Workspace::from_str("{", None), Err(CliError::Parse(_))));
        assert!(matches!(Workspace::from_str("[]", None), Err(CliError::Parse(_))));
        let bad_ref = r#"{"modules": {"M": {"algebra": "nope", "dim": 0, "deg": [], "action": []}}}"#;
        assert!(matches!(Workspace::from_str(bad_ref, None), Err(CliError::UnknownKey(_))));
    }
}
