//! Interchange formats: ι-complex files and graded-root files.
//!
//! JSON in and out; output is canonical (sorted keys, lowest-terms
//! rationals as bare integers or "p/q" strings, stable entry order), so
//! identical inputs produce byte-identical files. Every differential and
//! involution entry carries its grading-forced U-exponent as a checksum.

use crate::CliError;
use iota_forge_core::graded_roots::{GradedRoot, SymmetricGradedRoot};
use iota_forge_core::iota_complex::IotaComplex;
use iota_forge_core::ufu_algebra::MonomialMatrix;
use iota_forge_core::Grading;
use serde_json::{json, Map, Value};

pub fn grading_to_json(g: Grading) -> Value {
    if g.is_integer() {
        json!(g.numer())
    } else {
        json!(g.to_string())
    }
}

pub fn grading_from_json(v: &Value) -> Result<Grading, CliError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Grading::from_int)
            .ok_or_else(|| CliError::Parse(format!("grading {n} is not an integer"))),
        Value::String(s) => {
            Grading::parse(s).ok_or_else(|| CliError::Parse(format!("bad grading string {s:?}")))
        }
        other => Err(CliError::Parse(format!("bad grading value {other}"))),
    }
}

fn field<'v>(obj: &'v Value, key: &str) -> Result<&'v Value, CliError> {
    obj.get(key)
        .ok_or_else(|| CliError::Parse(format!("missing field {key:?}")))
}

fn as_array<'v>(v: &'v Value, what: &str) -> Result<&'v Vec<Value>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::Parse(format!("{what} must be an array")))
}

fn as_str<'v>(v: &'v Value, what: &str) -> Result<&'v str, CliError> {
    v.as_str()
        .ok_or_else(|| CliError::Parse(format!("{what} must be a string")))
}

/// A named ι-complex as stored on disk.
pub struct ComplexFile {
    pub name: String,
    pub complex: IotaComplex,
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| CliError::Parse(format!("bad JSON: {e}")))?;
        let name = field(&v, "name")?;
        let name = as_str(name, "name")?.to_string();
        let gens = as_array(field(&v, "generators")?, "generators")?;
        let mut ids: Vec<String> = Vec::with_capacity(gens.len());
        let mut gradings: Vec<Grading> = Vec::with_capacity(gens.len());
        for g in gens {
            let id = as_str(field(g, "id")?, "generator id")?.to_string();
            if ids.contains(&id) {
                return Err(CliError::Parse(format!("duplicate generator id {id:?}")));
            }
            gradings.push(grading_from_json(field(g, "gr")?)?);
            ids.push(id);
        }
        let idx = |id: &str| -> Result<usize, CliError> {
            ids.iter()
                .position(|x| x == id)
                .ok_or_else(|| CliError::Parse(format!("unknown generator {id:?}")))
        };

        let read_arrows = |key: &str, degree: i64| -> Result<MonomialMatrix, CliError> {
            let mut m = MonomialMatrix::zero(gradings.clone(), gradings.clone(), degree);
            for e in as_array(field(&v, key)?, key)? {
                let from = as_str(field(e, "from")?, "from")?;
                let to = as_str(field(e, "to")?, "to")?;
                let upow = field(e, "upow")?
                    .as_i64()
                    .ok_or_else(|| CliError::Parse("upow must be an integer".into()))?;
                let (r, c) = (idx(to)?, idx(from)?);
                let forced = m.exponent(r, c);
                if forced != Some(upow) {
                    return Err(CliError::Parse(format!(
                        "{key} entry {from} -> {to}: upow {upow} disagrees with the \
                         grading-forced exponent {forced:?}"
                    )));
                }
                m.set(r, c)
                    .map_err(|_| CliError::Parse(format!("{key} entry {from} -> {to} inadmissible")))?;
            }
            Ok(m)
        };
        let d = read_arrows("differential", -1)?;
        let iota = read_arrows("iota", 0)?;
        let complex = IotaComplex::from_parts(ids, d, iota)
            .map_err(|e| CliError::Parse(format!("malformed complex: {e}")))?;
        Ok(ComplexFile { name, complex })
    }

    pub fn emit(&self) -> String {
        let c = &self.complex;
        let gens: Vec<Value> = c
            .names()
            .iter()
            .zip(c.gradings())
            .map(|(id, g)| {
                let mut m = Map::new();
                m.insert("gr".into(), grading_to_json(*g));
                m.insert("id".into(), json!(id));
                Value::Object(m)
            })
            .collect();
        let arrows = |m: &MonomialMatrix| -> Vec<Value> {
            let mut out = Vec::new();
            for c_idx in 0..m.ncols() {
                for r_idx in 0..m.nrows() {
                    if m.get(r_idx, c_idx) {
                        let mut e = Map::new();
                        e.insert("from".into(), json!(c.names()[c_idx]));
                        e.insert("to".into(), json!(c.names()[r_idx]));
                        e.insert("upow".into(), json!(m.exponent(r_idx, c_idx).unwrap()));
                        out.push(Value::Object(e));
                    }
                }
            }
            out
        };
        let mut root = Map::new();
        root.insert("name".into(), json!(self.name));
        root.insert("generators".into(), Value::Array(gens));
        root.insert("differential".into(), Value::Array(arrows(c.differential())));
        root.insert("iota".into(), Value::Array(arrows(c.involution())));
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
        s.push('\n');
        s
    }
}

/// A symmetric graded root as stored on disk. Vertices are listed in a
/// canonical planar depth-first order starting at the stem bottom; the
/// involution lists only non-fixed pairs.
pub struct RootFile {
    pub root: SymmetricGradedRoot,
}

impl RootFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| CliError::Parse(format!("bad JSON: {e}")))?;
        let verts = as_array(field(&v, "vertices")?, "vertices")?;
        let mut ids: Vec<String> = Vec::new();
        let mut gradings: Vec<Grading> = Vec::new();
        for g in verts {
            let id = as_str(field(g, "id")?, "vertex id")?.to_string();
            if ids.contains(&id) {
                return Err(CliError::Parse(format!("duplicate vertex id {id:?}")));
            }
            gradings.push(grading_from_json(field(g, "gr")?)?);
            ids.push(id);
        }
        let idx = |id: &str| -> Result<usize, CliError> {
            ids.iter()
                .position(|x| x == id)
                .ok_or_else(|| CliError::Parse(format!("unknown vertex {id:?}")))
        };
        let mut edges = Vec::new();
        for e in as_array(field(&v, "edges")?, "edges")? {
            let pair = as_array(e, "edge")?;
            if pair.len() != 2 {
                return Err(CliError::Parse("edges must be [a, b] pairs".into()));
            }
            edges.push((idx(as_str(&pair[0], "edge end")?)?, idx(as_str(&pair[1], "edge end")?)?));
        }
        let stem = idx(as_str(field(&v, "stem_bottom")?, "stem_bottom")?)?;
        let mut invol: Vec<usize> = (0..ids.len()).collect();
        for e in as_array(field(&v, "involution")?, "involution")? {
            let pair = as_array(e, "involution pair")?;
            if pair.len() != 2 {
                return Err(CliError::Parse("involution entries must be pairs".into()));
            }
            let a = idx(as_str(&pair[0], "involution end")?)?;
            let b = idx(as_str(&pair[1], "involution end")?)?;
            invol[a] = b;
            invol[b] = a;
        }
        let tree = GradedRoot::from_edges(gradings, &edges, stem)
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        let root = SymmetricGradedRoot::new(tree, invol)
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        Ok(RootFile { root })
    }

    /// Canonical emission: vertices renamed v0, v1, … along a depth-first
    /// planar traversal from the stem bottom.
    pub fn emit(&self) -> String {
        let tree = self.root.root();
        let mut order: Vec<usize> = Vec::with_capacity(tree.len());
        let mut stack = vec![tree.stem_bottom()];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &c in tree.children(v).iter().rev() {
                stack.push(c);
            }
        }
        let mut rank = vec![0usize; tree.len()];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        let name = |v: usize| format!("v{}", rank[v]);

        let vertices: Vec<Value> = order
            .iter()
            .map(|&v| {
                let mut m = Map::new();
                m.insert("gr".into(), grading_to_json(tree.gradings()[v]));
                m.insert("id".into(), json!(name(v)));
                Value::Object(m)
            })
            .collect();
        let mut edges: Vec<Value> = Vec::new();
        for &v in &order {
            for &c in tree.children(v) {
                edges.push(json!([name(c), name(v)]));
            }
        }
        let mut invol: Vec<Value> = Vec::new();
        for &v in &order {
            let w = self.root.j0(v);
            if v != w && rank[v] < rank[w] {
                invol.push(json!([name(v), name(w)]));
            }
        }
        let mut root = Map::new();
        root.insert("vertices".into(), Value::Array(vertices));
        root.insert("edges".into(), Value::Array(edges));
        root.insert("involution".into(), Value::Array(invol));
        root.insert("stem_bottom".into(), json!(name(tree.stem_bottom())));
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma_file() -> ComplexFile {
        let complex = IotaComplex::build(
            &[
                ("a", Grading::from_int(-2)),
                ("b", Grading::from_int(-2)),
                ("c", Grading::from_int(-3)),
            ],
            &[("c", "a"), ("c", "b")],
            &[("a", "b"), ("b", "a"), ("c", "c")],
        )
        .unwrap();
        ComplexFile {
            name: "sigma_2_3_7".into(),
            complex,
        }
    }

    #[test]
    fn complex_file_round_trip() {
        let f = sigma_file();
        let text = f.emit();
        let parsed = ComplexFile::parse(&text).unwrap();
        assert_eq!(parsed.name, f.name);
        assert_eq!(parsed.complex.names(), f.complex.names());
        assert_eq!(parsed.complex.gradings(), f.complex.gradings());
        assert_eq!(
            parsed.complex.differential().bits(),
            f.complex.differential().bits()
        );
        assert_eq!(parsed.emit(), text);
    }

    #[test]
    fn upow_checksum_is_enforced() {
        let bad = sigma_file()
            .emit()
            .replace("\"upow\": 1", "\"upow\": 2");
        assert!(matches!(ComplexFile::parse(&bad), Err(CliError::Parse(_))));
    }

    #[test]
    fn rational_gradings_round_trip() {
        let complex = IotaComplex::build(
            &[("u", Grading::new(-9, 4))],
            &[],
            &[("u", "u")],
        )
        .unwrap();
        let f = ComplexFile {
            name: "lens_like".into(),
            complex,
        };
        let text = f.emit();
        assert!(text.contains("\"-9/4\""));
        let parsed = ComplexFile::parse(&text).unwrap();
        assert_eq!(parsed.complex.gradings()[0], Grading::new(-9, 4));
    }

    #[test]
    fn root_file_round_trip_is_canonical() {
        let root = SymmetricGradedRoot::from_leaf_merges(
            &[Grading::from_int(-2), Grading::from_int(-2)],
            &[Grading::from_int(-6)],
        )
        .unwrap();
        let f = RootFile { root };
        let text = f.emit();
        let parsed = RootFile::parse(&text).unwrap();
        assert_eq!(parsed.emit(), text);
    }
}
