//! Pinned reference scenarios compared entry-for-entry against embedded data.

use anyhow::Result;
use serde::Serialize;

use mfd_forge::codes::{construct, ConstructOptions, ConstructionPath};
use mfd_forge::ferrers::FerrersDiagram;
use mfd_forge::field::make_tower;
use mfd_forge::golden;
use mfd_forge::skewflag::{build_flag, matrix_of, SkewPoly};
use mfd_forge::verify::{is_mfd, Method, VerifyOptions};
use mfd_forge::Gf;

use crate::render;

pub const IDS: [&str; 7] = ["fer5-nu", "nu-table", "f5-compatible-basis", "f2-n8-phi", "f5-mfd-d4", "f2-ut-d4", "mds-ex17"];

#[derive(Debug, Serialize)]
pub struct Outcome {
    pub id: String,
    pub passed: bool,
    pub lines: Vec<String>,
}

struct Checker {
    passed: bool,
    lines: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker { passed: true, lines: Vec::new() }
    }

    fn check<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got == want {
            self.lines.push(format!("ok    {what}: {got:?}"));
        } else {
            self.passed = false;
            self.lines.push(format!("FAIL  {what}: got {got:?}, expected {want:?}"));
        }
    }

    fn note(&mut self, text: String) {
        self.lines.push(text);
    }
}

fn dia(c: &[usize]) -> Result<FerrersDiagram> {
    Ok(FerrersDiagram::from_columns(c)?)
}

fn exhaustive() -> VerifyOptions {
    VerifyOptions { cap: u64::MAX, sample_on_cap: false, trials: 1, seed: 0 }
}

fn fer5_nu(c: &mut Checker) -> Result<()> {
    let d = dia(&golden::FER5_DIAGRAM)?;
    let k = golden::FER5_DISTANCE;
    c.check("nu_j", d.nu_values(k)?, golden::FER5_NU.to_vec());
    c.check("nu_min", d.nu_min(k)?, 2);
    c.check("adjoint", d.adjoint().columns().to_vec(), golden::FER5_ADJOINT.to_vec());
    Ok(())
}

fn nu_table(c: &mut Checker) -> Result<()> {
    let (d1, d2) = (dia(&golden::NU_TABLE_D1)?, dia(&golden::NU_TABLE_D2)?);
    c.note(format!("D1 = {d1}, D2 = {d2}; columns nu_min(D1) nu_MDS(D1) nu_min(D2) nu_MDS(D2)"));
    for (k, a, b, x, y) in golden::NU_TABLE {
        let got = (d1.nu_min(k)?, d1.nu_mds(k)?, d2.nu_min(k)?, d2.nu_mds(k)?);
        c.check(&format!("d = {k}"), got, (a, b, x, y));
    }
    Ok(())
}

fn compatible_basis(c: &mut Checker) -> Result<()> {
    for (label, p, n, modulus, basis) in [
        ("F_5, n = 5", 5u32, 5usize, &golden::F5_MODULUS[..], &golden::F5_BASIS_EXPONENTS[..]),
        ("F_2, n = 8", 2, 8, &golden::F2_MODULUS[..], &golden::F2_BASIS_EXPONENTS[..]),
    ] {
        let t = make_tower(p, 1, n, Some(modulus), None)?;
        let flag = build_flag(&t)?;
        let dims: Vec<usize> = (0..=n).map(|i| flag.subspace(i).rows()).collect();
        c.check(&format!("{label}: dim F_i"), dims, (0..=n).collect());
        let verdict = flag.with_gamma_exponents(basis).map(|_| ()).map_err(|e| e.to_string());
        c.check(&format!("{label}: gamma exponents {basis:?} compatible"), verdict, Ok(()));
    }
    Ok(())
}

fn f2_phi(c: &mut Checker) -> Result<()> {
    let t = make_tower(2, 1, 8, Some(&golden::F2_MODULUS), None)?;
    let flag = build_flag(&t)?.with_gamma_exponents(&golden::F2_BASIS_EXPONENTS)?;
    let f = SkewPoly::from_gamma_terms(&t, &golden::F2_PHI_TERMS);
    let m = matrix_of(&f, &flag)?;
    let field = Gf::prime(2)?;
    c.note(render::matrix(&field, &m).trim_end().to_string());
    c.check("matrix of id + g^68 sb^2", m == golden::matrix(&golden::F2_PHI_MATRIX), true);
    Ok(())
}

struct Reference<'a, const N: usize> {
    p: u32,
    modulus: &'a [u32],
    basis: &'a [u128],
    columns: &'a [usize],
    k: usize,
    want: &'a [[[u32; N]; N]],
    codewords: u64,
}

fn golden_code<const N: usize>(c: &mut Checker, r: Reference<'_, N>) -> Result<()> {
    let Reference { p, modulus, basis, columns, k, want, codewords } = r;
    let d = dia(columns)?;
    let opts = ConstructOptions { modulus: Some(modulus.to_vec()), basis_exponents: Some(basis.to_vec()) };
    let field = Gf::prime(p)?;
    let code = construct(&d, k, &field, &opts)?;
    c.check("dimension", code.dimension(), want.len());
    for (i, (g, w)) in code.generators.iter().zip(want).enumerate() {
        c.check(&format!("generator {}", i + 1), g == &golden::matrix(w), true);
    }
    let r = is_mfd(&code, &d, k, &exhaustive())?;
    c.check("codewords enumerated", r.codewords_checked, codewords);
    c.check("minimum rank", r.min_rank, Some(k));
    c.check("dimension equals nu_min", r.dimension_ok, true);
    c.check("certified", r.certified, true);
    Ok(())
}

fn mds_ex17(c: &mut Checker) -> Result<()> {
    let d = dia(&golden::MDS_DIAGRAM)?;
    let k = golden::MDS_DISTANCE;
    for (p, words) in [(2u32, 511u64), (3, 19682)] {
        let code = construct(&d, k, &Gf::prime(p)?, &ConstructOptions::default())?;
        c.check(&format!("F_{p}: path"), code.path, ConstructionPath::MdsConstructible);
        let Some(t) = code.trace.mds.clone() else {
            c.check(&format!("F_{p}: trace present"), false, true);
            continue;
        };
        c.check("j", t.j, golden::MDS_SINGLETON_J);
        c.check("Y", t.y, golden::MDS_Y.to_vec());
        c.check("l", t.ell, Some(golden::MDS_ELL));
        c.check("D'", t.d_prime.map(|x| x.columns().to_vec()), Some(golden::MDS_D_PRIME.to_vec()));
        c.check("D''", t.d_double_prime.map(|x| x.columns().to_vec()), Some(golden::MDS_D_DOUBLE_PRIME.to_vec()));
        c.check("nu_min(D'', d)", t.nu_min_d_double_prime, Some(golden::MDS_NU_MIN_D_DOUBLE_PRIME));
        c.check("|D'' \\ D'|", t.removed_cells, Some(1));
        let r = is_mfd(&code, &d, k, &exhaustive())?;
        c.check(&format!("F_{p}: dimension"), r.dimension, golden::MDS_DIMENSION);
        c.check(&format!("F_{p}: codewords enumerated"), r.codewords_checked, words);
        c.check(&format!("F_{p}: minimum rank >= {k}"), r.min_rank.is_some_and(|m| m >= k), true);
        c.check(&format!("F_{p}: method"), r.method, Method::Exhaustive);
    }
    Ok(())
}

pub fn run(id: &str) -> Result<Outcome> {
    let mut c = Checker::new();
    match id {
        "fer5-nu" => fer5_nu(&mut c)?,
        "nu-table" => nu_table(&mut c)?,
        "f5-compatible-basis" => compatible_basis(&mut c)?,
        "f2-n8-phi" => f2_phi(&mut c)?,
        "f5-mfd-d4" => golden_code(
            &mut c,
            Reference {
                p: 5,
                modulus: &golden::F5_MODULUS,
                basis: &golden::F5_BASIS_EXPONENTS,
                columns: &golden::F5_DIAGRAM,
                k: golden::F5_DISTANCE,
                want: &golden::F5_GENERATORS,
                codewords: 624,
            },
        )?,
        "f2-ut-d4" => golden_code(
            &mut c,
            Reference {
                p: 2,
                modulus: &golden::F2_MODULUS,
                basis: &golden::F2_BASIS_EXPONENTS,
                columns: &golden::F2_UT_DIAGRAM,
                k: golden::F2_UT_DISTANCE,
                want: &golden::F2_UT_GENERATORS,
                codewords: 63,
            },
        )?,
        "mds-ex17" => mds_ex17(&mut c)?,
        other => anyhow::bail!("unknown scenario {other:?}; expected one of {} or all", IDS.join(", ")),
    }
    Ok(Outcome { id: id.to_string(), passed: c.passed, lines: c.lines })
}
