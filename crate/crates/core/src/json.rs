//! JSON encodings of the library's input types.
//!
//! Loaders check the whole document before building anything and report
//! every failing field with its path, e.g. `forms[0][1][0]`.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::forms::{AlternatingForm, FormFamily, QuadraticPoly, QuadraticSystem};
use crate::gf2::{BitMatrix, BitVector};
use crate::polyalg::{GradedPoly, IdealGens, LinearAction};
use crate::repaction::GroupOracle;

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::MalformedJson(e.to_string()))
}

pub fn read(path: &Path) -> Result<Value> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn write(path: &Path, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("values always serialize");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Collects schema violations while walking a document.
#[derive(Default)]
struct Check {
    errors: Vec<String>,
}

impl Check {
    fn fail(&mut self, path: &str, msg: impl std::fmt::Display) {
        self.errors.push(format!("{path}: {msg}"));
    }

    fn object<'a>(&mut self, v: &'a Value, path: &str) -> Option<&'a Map<String, Value>> {
        let o = v.as_object();
        if o.is_none() {
            self.fail(path, "expected an object");
        }
        o
    }

    fn field<'a>(&mut self, o: &'a Map<String, Value>, path: &str, key: &str) -> Option<&'a Value> {
        let f = o.get(key);
        if f.is_none() {
            self.fail(&join(path, key), "missing field");
        }
        f
    }

    fn uint(&mut self, v: &Value, path: &str) -> Option<usize> {
        let u = v.as_u64().and_then(|u| usize::try_from(u).ok());
        if u.is_none() {
            self.fail(path, "expected a nonnegative integer");
        }
        u
    }

    fn uint_field(&mut self, o: &Map<String, Value>, path: &str, key: &str) -> Option<usize> {
        let v = self.field(o, path, key)?;
        self.uint(v, &join(path, key))
    }

    fn array<'a>(&mut self, v: &'a Value, path: &str) -> Option<&'a Vec<Value>> {
        let a = v.as_array();
        if a.is_none() {
            self.fail(path, "expected an array");
        }
        a
    }

    fn array_field<'a>(
        &mut self,
        o: &'a Map<String, Value>,
        path: &str,
        key: &str,
    ) -> Option<&'a Vec<Value>> {
        let v = self.field(o, path, key)?;
        self.array(v, &join(path, key))
    }

    fn finish<T>(self, build: impl FnOnce() -> Result<T>) -> Result<T> {
        if self.errors.is_empty() {
            build()
        } else {
            Err(Error::Schema(self.errors))
        }
    }

    /// Rows of `'0'/'1'` strings, each of length `cols`.
    fn bit_rows(&mut self, rows: &[Value], cols: usize, path: &str) -> Option<Vec<BitVector>> {
        let mut out = Vec::with_capacity(rows.len());
        let mut ok = true;
        for (i, r) in rows.iter().enumerate() {
            let p = format!("{path}[{i}]");
            match r.as_str() {
                None => {
                    self.fail(&p, "expected a string of 0/1 characters");
                    ok = false;
                }
                Some(s) if s.chars().count() != cols => {
                    self.fail(
                        &p,
                        format!("expected {cols} characters, found {}", s.chars().count()),
                    );
                    ok = false;
                }
                Some(s) => match BitVector::parse01(s) {
                    Ok(v) => out.push(v),
                    Err(_) => {
                        self.fail(&p, "characters must be 0 or 1");
                        ok = false;
                    }
                },
            }
        }
        ok.then_some(out)
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

pub fn matrix_to_value(m: &BitMatrix) -> Value {
    json!({ "rows": m.rows(), "cols": m.cols(), "data": m.row_strings() })
}

fn check_matrix(c: &mut Check, v: &Value, path: &str) -> Option<BitMatrix> {
    let o = c.object(v, path)?;
    let rows = c.uint_field(o, path, "rows");
    let cols = c.uint_field(o, path, "cols");
    let data = c.array_field(o, path, "data");
    let (rows, cols, data) = (rows?, cols?, data?);
    if data.len() != rows {
        c.fail(
            &join(path, "data"),
            format!("expected {rows} rows, found {}", data.len()),
        );
        return None;
    }
    let bits = c.bit_rows(data, cols, &join(path, "data"))?;
    Some(BitMatrix::from_rows(cols, bits).expect("row lengths checked"))
}

pub fn matrix_from_value(v: &Value) -> Result<BitMatrix> {
    let mut c = Check::default();
    let m = check_matrix(&mut c, v, "");
    c.finish(|| Ok(m.unwrap()))
}

pub fn family_to_value(fam: &FormFamily) -> Value {
    json!({
        "n": fam.n(),
        "t": fam.t(),
        "forms": fam.forms().iter().map(|f| f.gram().row_strings()).collect::<Vec<_>>(),
    })
}

pub fn family_from_value(v: &Value) -> Result<FormFamily> {
    let mut c = Check::default();
    let mut grams = Vec::new();
    let mut n_out = 0;
    if let Some(o) = c.object(v, "") {
        let n = c.uint_field(o, "", "n");
        let t = c.uint_field(o, "", "t");
        let forms = c.array_field(o, "", "forms");
        if let (Some(n), Some(t), Some(forms)) = (n, t, forms) {
            n_out = n;
            if forms.len() != t {
                c.fail(
                    "forms",
                    format!("expected {t} forms, found {}", forms.len()),
                );
            }
            for (s, f) in forms.iter().enumerate() {
                let p = format!("forms[{s}]");
                let Some(rows) = c.array(f, &p) else { continue };
                if rows.len() != n {
                    c.fail(&p, format!("expected {n} rows, found {}", rows.len()));
                    continue;
                }
                let Some(bits) = c.bit_rows(rows, n, &p) else {
                    continue;
                };
                let gram = BitMatrix::from_rows(n, bits).expect("row lengths checked");
                for i in 0..n {
                    if gram.get(i, i) {
                        c.fail(&format!("{p}[{i}][{i}]"), "diagonal entry must be 0");
                    }
                    for j in 0..i {
                        if gram.get(i, j) != gram.get(j, i) {
                            c.fail(
                                &format!("{p}[{i}][{j}]"),
                                format!("not symmetric with {p}[{j}][{i}]"),
                            );
                        }
                    }
                }
                grams.push(gram);
            }
        }
    }
    c.finish(|| {
        let forms = grams
            .into_iter()
            .map(AlternatingForm::new)
            .collect::<Result<Vec<_>>>()?;
        FormFamily::new(n_out, forms)
    })
}

pub fn table_to_value(g: &GroupOracle) -> Value {
    let n = g.order();
    json!({
        "order": n,
        "mul": (0..n).map(|a| (0..n).map(|b| g.mul(a, b)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn table_from_value(v: &Value) -> Result<GroupOracle> {
    let mut c = Check::default();
    let mut rows_out = Vec::new();
    if let Some(o) = c.object(v, "") {
        let order = c.uint_field(o, "", "order");
        let mul = c.array_field(o, "", "mul");
        if let (Some(order), Some(mul)) = (order, mul) {
            if mul.len() != order {
                c.fail("mul", format!("expected {order} rows, found {}", mul.len()));
            }
            for (i, r) in mul.iter().enumerate() {
                let p = format!("mul[{i}]");
                let Some(r) = c.array(r, &p) else { continue };
                if r.len() != order {
                    c.fail(&p, format!("expected {order} entries, found {}", r.len()));
                    continue;
                }
                let row: Vec<Option<usize>> = r
                    .iter()
                    .enumerate()
                    .map(|(j, x)| c.uint(x, &format!("{p}[{j}]")))
                    .collect();
                rows_out.push(row.into_iter().map(|x| x.unwrap_or(0)).collect::<Vec<_>>());
            }
        }
    }
    c.finish(|| GroupOracle::from_table(rows_out))
}

pub fn poly_to_value(p: &GradedPoly) -> Value {
    json!({
        "nvars": p.nvars(),
        "degree": p.degree(),
        "monomials": p.monomials().iter().collect::<Vec<_>>(),
    })
}

fn check_poly(
    c: &mut Check,
    v: &Value,
    path: &str,
    nvars_expected: Option<usize>,
) -> Option<GradedPoly> {
    let o = c.object(v, path)?;
    let nvars = c.uint_field(o, path, "nvars")?;
    if let Some(e) = nvars_expected {
        if e != nvars {
            c.fail(&join(path, "nvars"), format!("expected {e}, found {nvars}"));
            return None;
        }
    }
    let degree = match o.get("degree") {
        Some(d) => Some(c.uint(d, &join(path, "degree"))?),
        None => None,
    };
    let monos = c.array_field(o, path, "monomials")?;
    let mut out = Vec::with_capacity(monos.len());
    let mut ok = true;
    for (k, m) in monos.iter().enumerate() {
        let p = format!("{}[{k}]", join(path, "monomials"));
        let Some(m) = c.array(m, &p) else {
            ok = false;
            continue;
        };
        if m.len() != nvars {
            c.fail(&p, format!("expected {nvars} exponents, found {}", m.len()));
            ok = false;
            continue;
        }
        let exps: Option<Vec<u32>> = m
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let r = e.as_u64().and_then(|e| u32::try_from(e).ok());
                if r.is_none() {
                    c.fail(&format!("{p}[{i}]"), "expected a nonnegative exponent");
                }
                r
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        match exps {
            Some(e) => out.push(e),
            None => ok = false,
        }
    }
    if !ok {
        return None;
    }
    let degree = match degree {
        Some(d) => d,
        None => match out.first() {
            Some(m) => m.iter().map(|&e| e as usize).sum(),
            None => {
                c.fail(&join(path, "degree"), "required for the zero polynomial");
                return None;
            }
        },
    };
    match GradedPoly::new(nvars, degree, out) {
        Ok(p) => Some(p),
        Err(e) if e.is_guard() => {
            c.fail(path, e);
            None
        }
        Err(e) => {
            c.fail(&join(path, "monomials"), e);
            None
        }
    }
}

pub fn poly_from_value(v: &Value) -> Result<GradedPoly> {
    let mut c = Check::default();
    let p = check_poly(&mut c, v, "", None);
    c.finish(|| Ok(p.unwrap()))
}

pub fn ideal_to_value(i: &IdealGens) -> Value {
    json!({
        "nvars": i.nvars(),
        "gens": i.gens().iter().map(poly_to_value).collect::<Vec<_>>(),
    })
}

pub fn ideal_from_value(v: &Value) -> Result<IdealGens> {
    let mut c = Check::default();
    let mut nvars = 0;
    let mut gens = Vec::new();
    if let Some(o) = c.object(v, "") {
        let n = c.uint_field(o, "", "nvars");
        let g = c.array_field(o, "", "gens");
        if let (Some(n), Some(g)) = (n, g) {
            nvars = n;
            for (k, p) in g.iter().enumerate() {
                if let Some(p) = check_poly(&mut c, p, &format!("gens[{k}]"), Some(n)) {
                    gens.push(p);
                }
            }
        }
    }
    c.finish(|| IdealGens::new(nvars, gens))
}

pub fn action_to_value(a: &LinearAction) -> Value {
    json!({
        "nvars": a.nvars(),
        "generators": a.generators().iter().map(matrix_to_value).collect::<Vec<_>>(),
    })
}

pub fn action_from_value(v: &Value) -> Result<LinearAction> {
    let mut c = Check::default();
    let mut nvars = 0;
    let mut gens = Vec::new();
    if let Some(o) = c.object(v, "") {
        let n = c.uint_field(o, "", "nvars");
        let g = c.array_field(o, "", "generators");
        if let (Some(n), Some(g)) = (n, g) {
            nvars = n;
            for (k, m) in g.iter().enumerate() {
                let p = format!("generators[{k}]");
                if let Some(m) = check_matrix(&mut c, m, &p) {
                    if m.rows() != n || m.cols() != n {
                        c.fail(
                            &p,
                            format!("expected {n}x{n}, found {}x{}", m.rows(), m.cols()),
                        );
                    } else if !m.is_invertible() {
                        c.fail(&p, "matrix is not invertible");
                    } else {
                        gens.push(m);
                    }
                }
            }
        }
    }
    c.finish(|| LinearAction::new(nvars, gens))
}

pub fn system_to_value(s: &QuadraticSystem) -> Value {
    json!({
        "v": s.v(),
        "polys": s.polys().iter().map(|p| p.monomials().iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// `{"v": v, "polys": [[[i, j], [k], ...], ...]}`: each monomial lists its
/// variables, `[i, i]` being `x_i²` and `[]` the constant 1.
pub fn system_from_value(v: &Value) -> Result<QuadraticSystem> {
    let mut c = Check::default();
    let mut nv = 0;
    let mut polys = Vec::new();
    if let Some(o) = c.object(v, "") {
        let n = c.uint_field(o, "", "v");
        let ps = c.array_field(o, "", "polys");
        if let (Some(n), Some(ps)) = (n, ps) {
            nv = n;
            for (k, p) in ps.iter().enumerate() {
                let path = format!("polys[{k}]");
                let Some(monos) = c.array(p, &path) else {
                    continue;
                };
                let mut list = Vec::new();
                for (l, m) in monos.iter().enumerate() {
                    let mp = format!("{path}[{l}]");
                    let Some(vars) = c.array(m, &mp) else {
                        continue;
                    };
                    let vars: Vec<Option<usize>> = vars
                        .iter()
                        .enumerate()
                        .map(|(i, x)| c.uint(x, &format!("{mp}[{i}]")))
                        .collect();
                    if let Some(vars) = vars.into_iter().collect::<Option<Vec<_>>>() {
                        list.push(vars);
                    }
                }
                match QuadraticPoly::new(n, list) {
                    Ok(q) => polys.push(q),
                    Err(e) => c.fail(&path, e),
                }
            }
        }
    }
    c.finish(|| QuadraticSystem::new(nv, polys))
}

pub fn load_family(path: &Path) -> Result<FormFamily> {
    family_from_value(&read(path)?)
}

pub fn save_family(path: &Path, fam: &FormFamily) -> Result<()> {
    write(path, &family_to_value(fam))
}

pub fn load_table(path: &Path) -> Result<GroupOracle> {
    table_from_value(&read(path)?)
}

pub fn save_table(path: &Path, g: &GroupOracle) -> Result<()> {
    write(path, &table_to_value(g))
}

pub fn load_ideal(path: &Path) -> Result<IdealGens> {
    ideal_from_value(&read(path)?)
}

pub fn save_ideal(path: &Path, i: &IdealGens) -> Result<()> {
    write(path, &ideal_to_value(i))
}

pub fn load_action(path: &Path) -> Result<LinearAction> {
    action_from_value(&read(path)?)
}

pub fn load_system(path: &Path) -> Result<QuadraticSystem> {
    system_from_value(&read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::random_family;

    #[test]
    fn family_round_trip() {
        for seed in 0..20 {
            let fam = random_family(5, 3, seed).unwrap();
            let back = family_from_value(&family_to_value(&fam)).unwrap();
            assert_eq!(back, fam);
        }
    }

    #[test]
    fn family_errors_list_every_field() {
        let v = json!({"n": 2, "t": 2, "forms": [["01", "00"], ["11", "10"]]});
        let Err(Error::Schema(errs)) = family_from_value(&v) else {
            panic!("expected schema failure")
        };
        assert_eq!(
            errs,
            vec![
                "forms[0][1][0]: not symmetric with forms[0][0][1]",
                "forms[1][0][0]: diagonal entry must be 0",
            ]
        );
        let v = json!({"n": 2, "forms": [["0x", "00"]]});
        let Err(Error::Schema(errs)) = family_from_value(&v) else {
            panic!("expected schema failure")
        };
        assert_eq!(errs, vec!["t: missing field"]);
        let v = json!({"n": 2, "t": 1, "forms": [["0x", "0"]]});
        let Err(Error::Schema(errs)) = family_from_value(&v) else {
            panic!("expected schema failure")
        };
        assert_eq!(errs.len(), 2);
    }

    #[test]
    fn malformed_text() {
        assert!(matches!(parse("{\"n\": "), Err(Error::MalformedJson(_))));
    }

    #[test]
    fn table_round_trip() {
        let g = GroupOracle::dihedral(4);
        let back = table_from_value(&table_to_value(&g)).unwrap();
        assert_eq!(back.order(), 8);
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(back.mul(a, b), g.mul(a, b));
            }
        }
        let bad = json!({"order": 2, "mul": [[0, 1], [1, 1]]});
        assert!(matches!(
            table_from_value(&bad),
            Err(Error::InvalidTable(_))
        ));
        let bad = json!({"order": 2, "mul": [[0, 1], [1, -1]]});
        assert!(matches!(table_from_value(&bad), Err(Error::Schema(_))));
    }

    #[test]
    fn ideal_and_poly_round_trip() {
        let i = IdealGens::powers(3, 4);
        assert_eq!(ideal_from_value(&ideal_to_value(&i)).unwrap(), i);
        let v = json!({"nvars": 2, "monomials": [[2, 0], [1, 1]]});
        let p = poly_from_value(&v).unwrap();
        assert_eq!(p.degree(), 2);
        let bad = json!({"nvars": 2, "monomials": [[2, 0], [1, 0]]});
        assert!(matches!(poly_from_value(&bad), Err(Error::Schema(_))));
        let zero = json!({"nvars": 2, "monomials": [], "degree": 3});
        assert!(poly_from_value(&zero).unwrap().is_zero());
        assert!(poly_from_value(&json!({"nvars": 2, "monomials": []})).is_err());
    }

    #[test]
    fn action_and_system_round_trip() {
        let a = LinearAction::new(2, vec![BitMatrix::permutation(&[1, 0])]).unwrap();
        assert_eq!(action_from_value(&action_to_value(&a)).unwrap(), a);
        let singular =
            json!({"nvars": 2, "generators": [{"rows": 2, "cols": 2, "data": ["11", "11"]}]});
        assert!(matches!(
            action_from_value(&singular),
            Err(Error::Schema(_))
        ));

        let s = QuadraticSystem::random_homogeneous(2, 5, 9);
        assert_eq!(system_from_value(&system_to_value(&s)).unwrap(), s);
    }

    #[test]
    fn matrix_round_trip() {
        let m = BitMatrix::parse_rows(3, &["101", "011"]).unwrap();
        assert_eq!(matrix_from_value(&matrix_to_value(&m)).unwrap(), m);
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join(format!("tworank-json-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("fam.json");
        let fam = random_family(4, 2, 3).unwrap();
        save_family(&path, &fam).unwrap();
        assert_eq!(load_family(&path).unwrap(), fam);
        std::fs::remove_dir_all(&dir).unwrap();
        assert!(matches!(load_family(&path), Err(Error::Io(_))));
    }
}
