use num_rational::BigRational;

use ssgl2::classno::{
    census, census_types, h123, h_O16, h_O8, h_eichler_pizer, h_maximal, o_pair,
};
use ssgl2::cyclo::{dagger, NTuple};
use ssgl2::numth::{is_prime, kronecker};
use ssgl2::oracle::{
    double_coset_table, eichler_mass, enumerate_right_ideal_classes, h123_bruteforce,
    h_eichler_bruteforce, unit_group_order, EnumConfig,
};
use ssgl2::quatalg::{make_algebra, maximal_order};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    IdealClasses,
    Eichler,
    Units,
    Cosets,
    Identities,
    Integrality,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::IdealClasses => "ideal-classes",
            Suite::Eichler => "eichler",
            Suite::Units => "units",
            Suite::Cosets => "cosets",
            Suite::Identities => "identities",
            Suite::Integrality => "integrality",
        }
    }

    pub fn enumerates(self) -> bool {
        matches!(self, Suite::IdealClasses | Suite::Eichler | Suite::Units)
    }
}

pub struct SuiteReport {
    pub passed: bool,
    /// Summary on success, first counterexample on failure.
    pub detail: String,
    /// Extra lines printed after the summary.
    pub extra: Vec<String>,
}

fn ok(detail: String) -> SuiteReport {
    SuiteReport { passed: true, detail, extra: Vec::new() }
}

fn bad(detail: String) -> SuiteReport {
    SuiteReport { passed: false, detail, extra: Vec::new() }
}

fn primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

fn chi(d: i64, p: u64) -> i64 {
    kronecker(d, p as i64).expect("p > 0").value()
}

pub fn run(suite: Suite, bound: u64, cfg: &EnumConfig) -> SuiteReport {
    match suite {
        Suite::IdealClasses => ideal_classes(bound, cfg),
        Suite::Eichler => eichler(bound, cfg),
        Suite::Units => units(bound, cfg),
        Suite::Cosets => cosets(),
        Suite::Identities => identities(bound),
        Suite::Integrality => integrality(bound),
    }
}

fn ideal_classes(bound: u64, cfg: &EnumConfig) -> SuiteReport {
    let ps = primes(5, bound);
    for &p in &ps {
        let brute = match h123_bruteforce(p, cfg) {
            Ok(b) => b,
            Err(e) => return bad(format!("p = {p}: {e}")),
        };
        let closed = h123(p).expect("p >= 5");
        if brute != closed {
            return bad(format!(
                "p = {p}: enumerated (h, h1, h2, h3) = ({}, {}, {}, {}), closed form ({}, {}, {}, {})",
                brute.h, brute.h1, brute.h2, brute.h3, closed.h, closed.h1, closed.h2, closed.h3
            ));
        }
    }
    ok(format!("{} primes in [5, {bound}]", ps.len()))
}

fn eichler(bound: u64, cfg: &EnumConfig) -> SuiteReport {
    let mut checked = 0;
    let mut skipped = Vec::new();
    for p in primes(5, bound) {
        for ell in [2u64, 3] {
            if p * ell > cfg.discriminant_bound {
                skipped.push(format!("({p},{ell})"));
                continue;
            }
            let closed = h_eichler_pizer(p, ell).expect("p != l");
            match h_eichler_bruteforce(p, ell, cfg) {
                Ok(h) if h == closed => checked += 1,
                Ok(h) => return bad(format!("(p, l) = ({p}, {ell}): enumerated {h}, closed form {closed}")),
                Err(e) => return bad(format!("(p, l) = ({p}, {ell}): {e}")),
            }
        }
    }
    let mut r = ok(format!("{checked} (p, l) pairs"));
    if !skipped.is_empty() {
        r.extra.push(format!(
            "skipped above discriminant bound {}: {}",
            cfg.discriminant_bound,
            skipped.join(" ")
        ));
    }
    r
}

fn units(bound: u64, cfg: &EnumConfig) -> SuiteReport {
    for (p, expect) in [(2u64, 24u64), (3, 12)] {
        let o = maximal_order(&make_algebra(p).expect("prime")).expect("maximal order");
        let u = unit_group_order(&o);
        if u != expect {
            return bad(format!("p = {p}: |O^x| = {u}, expected {expect}"));
        }
    }
    let ps = primes(5, bound);
    for &p in &ps {
        let o = maximal_order(&make_algebra(p).expect("prime")).expect("maximal order");
        let set = match enumerate_right_ideal_classes(&o, cfg) {
            Ok(s) => s,
            Err(e) => return bad(format!("p = {p}: {e}")),
        };
        if let Some(u) = set.unit_orders.iter().find(|u| ![2, 4, 6].contains(*u)) {
            return bad(format!("p = {p}: unit group of order {u}"));
        }
        let mass: BigRational = set.mass();
        if mass != eichler_mass(&o) {
            return bad(format!("p = {p}: mass {mass}, expected {}", eichler_mass(&o)));
        }
    }
    ok(format!("|O^x| = 24, 12 at p = 2, 3; unit orders and mass for {} primes", ps.len()))
}

fn cosets() -> SuiteReport {
    let t = double_coset_table().entries;
    let expect = [[6, 3, 2], [3, 2, 1], [2, 1, 2]];
    let mut r = if t == expect {
        ok("table matches".into())
    } else {
        bad(format!("got {t:?}"))
    };
    for row in t {
        r.extra.push(format!("{} {} {}", row[0], row[1], row[2]));
    }
    r
}

fn identities(bound: u64) -> SuiteReport {
    let c = double_coset_table().entries;
    let ps = primes(5, bound);
    for &p in &ps {
        if let Err(msg) = identities_at(p, &c) {
            return bad(format!("p = {p}: {msg}"));
        }
    }
    ok(format!("{} primes in [5, {bound}]", ps.len()))
}

fn identities_at(p: u64, c: &[[u64; 3]; 3]) -> Result<(), String> {
    let s = |e: ssgl2::classno::ClassnoError| e.to_string();
    let h = h_maximal(p).map_err(s)?;
    let b = h123(p).map_err(s)?;
    if b.h != b.h1 + b.h2 + b.h3 {
        return Err("h != h1 + h2 + h3".into());
    }
    let e2 = h_eichler_pizer(p, 2).map_err(s)?;
    let e3 = h_eichler_pizer(p, 3).map_err(s)?;
    if 4 * e2 as i64 != p as i64 - chi(-4, p) || 3 * e3 as i64 != p as i64 - chi(-3, p) {
        return Err("Eichler class number reduction".into());
    }
    let (o8, o16) = (h_O8(p).map_err(s)?, h_O16(p).map_err(s)?);
    if o8 != e2 * e2 {
        return Err("h(O8) != h(O^(2))^2".into());
    }
    let pair = |a, b| o_pair(&NTuple::pair(a, b), p).map_err(s);
    if pair(1, 2)? != h * h + o8 + o16 {
        return Err("o(1,2) != h^2 + h(O8) + h(O16)".into());
    }
    if pair(2, 3)? != (1 - chi(-3, p)) as u64 * h {
        return Err("o(2,3) != (1 - (-3/p)) h".into());
    }
    if p % 4 == 3 && pair(2, 4)? != 2 * h + 2 * e2 {
        return Err("o(2,4) != 2h + 2h(O^(2))".into());
    }
    if p % 3 == 2 && pair(2, 6)? != 2 * h + 2 * e3 {
        return Err("o(2,6) != 2h + 2h(O^(3))".into());
    }
    let hs = [b.h1, b.h2, b.h3];
    let fiber: u64 = (0..3)
        .flat_map(|i| (0..3).map(move |j| hs[i] * hs[j] * c[i][j]))
        .sum();
    if fiber != o16 {
        return Err(format!("h(O16) = {o16} but fiber sum = {fiber}"));
    }
    let r = census(p).map_err(s)?;
    let same = |x: NTuple, y: NTuple| r.terms[&x] == r.terms[&y];
    for (x, y) in [((1, 3), (2, 6)), ((1, 4), (2, 4)), ((1, 6), (2, 3)), ((3, 4), (4, 6))] {
        let (x, y) = (NTuple::pair(x.0, x.1), NTuple::pair(y.0, y.1));
        if dagger(&x) != y || !same(x, y) {
            return Err("pair symmetry".into());
        }
    }
    if !same(NTuple::single(3), NTuple::single(6)) || !same(NTuple::single(5), NTuple::single(10)) {
        return Err("single symmetry".into());
    }
    Ok(())
}

fn integrality(bound: u64) -> SuiteReport {
    let ps = primes(5, bound);
    for &p in &ps {
        let r = match census(p) {
            Ok(r) => r,
            Err(e) => return bad(format!("p = {p}: {e}")),
        };
        for t in census_types() {
            if r.terms[&t].is_none() && p > 5 {
                return bad(format!("p = {p}: o{t} missing"));
            }
        }
        let hs = [h_maximal(p), h_eichler_pizer(p, 2), h_eichler_pizer(p, 3), h_O8(p), h_O16(p)];
        if let Some(Err(e)) = hs.into_iter().find(|x| x.is_err()) {
            return bad(format!("p = {p}: {e}"));
        }
    }
    ok(format!("{} primes in [5, {bound}]", ps.len()))
}
