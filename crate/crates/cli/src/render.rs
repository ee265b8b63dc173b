use std::fmt::Write;

use monores::conjecture::FuzzReport;
use monores::decompose::ShiftedIdeal;
use monores::engine::{CharacteristicReport, Verification};
use monores::ideal::{is_almost_generic, is_artinian, pd2_hypothesis, pdn_hypothesis};
use monores::parse::ideal_to_json_value;
use monores::taylor::Face;
use monores::{classify as classify_ideal, DominanceClass, Monomial, MonomialIdeal};
use serde_json::{json, Value};

use crate::Failure;

fn exps(ms: &[Monomial]) -> Vec<&[u32]> {
    ms.iter().map(Monomial::exponents).collect()
}

pub fn classify(ideal: &MonomialIdeal) -> Result<(String, Value), Failure> {
    let report = classify_ideal(ideal)?;
    let vars = ideal.vars();
    let artinian = is_artinian(ideal).0;
    let almost_generic = is_almost_generic(ideal).0;
    let pd2 = ideal.len() >= 2 && pd2_hypothesis(ideal)?;
    let pivot = pdn_hypothesis(ideal);

    let mut text = format!("{} (q = {}, p = {})\n", report.label(), ideal.len(), report.p);
    for (g, w) in ideal.generators().iter().zip(&report.witnesses) {
        match w {
            Some(v) => writeln!(text, "  {}  dominant in {}", vars.display(g), vars.name(*v)),
            None => writeln!(text, "  {}  nondominant", vars.display(g)),
        }
        .unwrap();
    }
    writeln!(text, "artinian: {artinian}").unwrap();
    writeln!(text, "almost generic: {almost_generic}").unwrap();
    writeln!(text, "pd = 2 criterion: {pd2}").unwrap();
    match pivot {
        Some(v) => writeln!(text, "pd = n criterion: pivot {}", vars.name(v)).unwrap(),
        None => writeln!(text, "pd = n criterion: false").unwrap(),
    }

    let class = match report.class {
        DominanceClass::Dominant => "dominant",
        DominanceClass::PurelyNondominant => "purely_nondominant",
        DominanceClass::Semidominant(_) => "semidominant",
    };
    let json = json!({
        "class": class,
        "q": ideal.len(),
        "p": report.p,
        "generators": ideal.generators().iter().zip(&report.witnesses).map(|(g, w)| json!({
            "mdeg": g.exponents(),
            "witness": w,
        })).collect::<Vec<_>>(),
        "artinian": artinian,
        "almost_generic": almost_generic,
        "pd2_hypothesis": pd2,
        "pdn_pivot": pivot,
    });
    Ok((text, json))
}

pub fn characteristic(ideal: &MonomialIdeal, r: &CharacteristicReport) -> String {
    let vars = ideal.vars();
    let mut text = format!(
        "characteristic: {}\nminimal homological degrees: {}\n",
        r.is_characteristic, r.min_hdeg_ok
    );
    for l in &r.violations {
        writeln!(text, "  violation at {}", vars.display(l)).unwrap();
    }
    text
}

pub fn terms(ideal: &MonomialIdeal, terms: &[ShiftedIdeal]) -> (String, Value) {
    let vars = ideal.vars();
    let mut text = String::new();
    for t in terms {
        writeln!(text, "({}, {}) -> ({})", t.j, vars.display(&t.m), t.ideal.display()).unwrap();
    }
    let json = Value::Array(
        terms
            .iter()
            .map(|t| json!({"j": t.j, "m": t.m.exponents(), "ideal": exps(t.ideal.generators())}))
            .collect(),
    );
    (text, json)
}

pub fn scarf(ideal: &MonomialIdeal, faces: &[Face]) -> (String, Value) {
    let vars = ideal.vars();
    let mut text = String::new();
    for f in faces {
        let members: Vec<String> = f.members().iter().map(|i| (i + 1).to_string()).collect();
        writeln!(text, "{}  {{{}}}  {}", f.hdeg(), members.join(","), vars.display(&f.mdeg)).unwrap();
    }
    let json = Value::Array(
        faces
            .iter()
            .map(|f| json!({"hdeg": f.hdeg(), "members": f.members(), "mdeg": f.mdeg.exponents()}))
            .collect(),
    );
    (text, json)
}

pub fn verification(ideal: &MonomialIdeal, v: &Verification) -> (String, Value) {
    let mut text = String::new();
    for (method, table) in &v.tables {
        writeln!(text, "{method}: pd {}, totals {:?}", table.pd(), table.totals()).unwrap();
    }
    text.push_str(if v.agree { "agree\n" } else { "MISMATCH\n" });
    let mut tables = serde_json::Map::new();
    for (method, table) in &v.tables {
        tables.insert(method.to_string(), table.to_json_value());
    }
    let json = json!({"ideal": ideal_to_json_value(ideal), "agree": v.agree, "tables": tables});
    (text, json)
}

pub fn random_verification(count: usize, mismatches: &[(u64, MonomialIdeal)]) -> (String, Value) {
    let mut text = format!("{count} ideals, {} mismatches\n", mismatches.len());
    for (seed, ideal) in mismatches {
        writeln!(text, "  seed {seed}: ({})", ideal.display()).unwrap();
    }
    let json = json!({
        "tested": count,
        "mismatches": mismatches.iter().map(|(s, i)| json!({"seed": s, "ideal": ideal_to_json_value(i)})).collect::<Vec<_>>(),
    });
    (text, json)
}

pub fn random(ideals: &[(u64, MonomialIdeal)]) -> (String, Value) {
    let mut text = String::new();
    for (seed, ideal) in ideals {
        writeln!(text, "{seed}: {}", ideal.display()).unwrap();
    }
    let json = Value::Array(
        ideals
            .iter()
            .map(|(s, i)| json!({"seed": s, "ideal": ideal_to_json_value(i)}))
            .collect(),
    );
    (text, json)
}

pub fn fuzz_report(r: &FuzzReport) -> String {
    let mut text = format!(
        "{}: {} tested, {} counterexamples\n",
        r.conjecture,
        r.tested,
        r.counterexamples.len()
    );
    for c in &r.counterexamples {
        writeln!(text, "  seed {}: ({})", c.seed, c.ideal.display()).unwrap();
        for line in c.betti.to_text(c.ideal.vars()).lines() {
            writeln!(text, "    {line}").unwrap();
        }
    }
    text
}
