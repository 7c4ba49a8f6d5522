//! Regenerates the bundled input documents under specs/.
//!
//! Usage: cargo run -p realh1-cli --example gen_specs -- [DIR]

use std::env;
use std::fs;
use std::path::PathBuf;

use num_traits::ToPrimitive;

use realh1::catalog;
use realh1::mat::IntVec;
use realh1::rootdata::RootDatum;
use realh1_cli::doc::{
    GeneratorsSection, LatticeSection, RealFormSection, RootDatumSection, SpecDocument,
};

fn ivec(v: &IntVec) -> Vec<i64> {
    v.iter()
        .map(|x| x.to_i64().expect("catalog entries fit in i64"))
        .collect()
}

fn minus_identity(rank: usize) -> Vec<Vec<i64>> {
    (0..rank)
        .map(|i| (0..rank).map(|j| if i == j { -1 } else { 0 }).collect())
        .collect()
}

fn datum_section(datum: &RootDatum) -> RootDatumSection {
    RootDatumSection {
        rank: datum.rank(),
        roots: datum.roots().iter().map(ivec).collect(),
        coroots: datum.coroots().iter().map(ivec).collect(),
        simple_indices: datum.simple_indices().to_vec(),
    }
}

fn lattice_doc(label: &str, sigma: Vec<Vec<i64>>) -> SpecDocument {
    SpecDocument {
        label: Some(label.to_string()),
        lattice: Some(LatticeSection {
            rank: sigma.len(),
            sigma,
        }),
        root_datum: None,
        real_form: None,
    }
}

fn form_doc(
    label: &str,
    datum: &RootDatum,
    sigma_star: Vec<Vec<i64>>,
    generators: GeneratorsSection,
    shift: Option<Vec<Vec<u8>>>,
) -> SpecDocument {
    SpecDocument {
        label: Some(label.to_string()),
        lattice: None,
        root_datum: Some(datum_section(datum)),
        real_form: Some(RealFormSection {
            sigma_star,
            w0_generators: generators,
            shift,
        }),
    }
}

fn compact_doc(label: &str, datum: &RootDatum) -> SpecDocument {
    form_doc(
        label,
        datum,
        minus_identity(datum.rank()),
        GeneratorsSection::Named("all_simple_reflections".to_string()),
        None,
    )
}

fn sl2_datum() -> RootDatum {
    catalog::su(2)
}

fn pgl2_datum() -> RootDatum {
    RootDatum::new(
        1,
        vec![vec![1.into()], vec![(-1).into()]],
        vec![vec![2.into()], vec![(-2).into()]],
        vec![0],
    )
    .expect("adjoint rank-one datum is valid")
}

fn sl2_squared_datum() -> RootDatum {
    RootDatum::new(
        2,
        vec![
            vec![2.into(), 0.into()],
            vec![(-2).into(), 0.into()],
            vec![0.into(), 2.into()],
            vec![0.into(), (-2).into()],
        ],
        vec![
            vec![1.into(), 0.into()],
            vec![(-1).into(), 0.into()],
            vec![0.into(), 1.into()],
            vec![0.into(), (-1).into()],
        ],
        vec![0, 2],
    )
    .expect("product datum is valid")
}

fn main() {
    let dir = PathBuf::from(env::args().nth(1).unwrap_or_else(|| "specs".to_string()));
    fs::create_dir_all(&dir).expect("create output directory");

    let docs: Vec<(&str, SpecDocument)> = vec![
        ("split.json", lattice_doc("split line", vec![vec![1]])),
        ("sign.json", lattice_doc("anisotropic line", vec![vec![-1]])),
        (
            "weil.json",
            lattice_doc("restriction of scalars plane", vec![vec![0, 1], vec![1, 0]]),
        ),
        (
            "sl2r.json",
            form_doc(
                "sl2r",
                &sl2_datum(),
                minus_identity(1),
                GeneratorsSection::Named("all_simple_reflections".to_string()),
                Some(vec![vec![0]]),
            ),
        ),
        (
            "pgl2r.json",
            form_doc(
                "pgl2r",
                &pgl2_datum(),
                minus_identity(1),
                GeneratorsSection::Named("all_simple_reflections".to_string()),
                Some(vec![vec![0]]),
            ),
        ),
        (
            "a1_shifted.json",
            form_doc(
                "a1 shifted",
                &sl2_datum(),
                minus_identity(1),
                GeneratorsSection::Named("all_simple_reflections".to_string()),
                Some(vec![vec![1]]),
            ),
        ),
        (
            "a1xa1_swap.json",
            form_doc(
                "a1xa1 swap",
                &sl2_squared_datum(),
                vec![vec![0, 1], vec![1, 0]],
                GeneratorsSection::Explicit(vec![vec![vec![-1, 0], vec![0, -1]]]),
                Some(vec![vec![0, 0]]),
            ),
        ),
        ("compact_a1.json", compact_doc("compact A1", &catalog::su(2))),
        ("compact_a2.json", compact_doc("compact A2", &catalog::su(3))),
        ("compact_b2.json", compact_doc("compact B2", &catalog::so(5))),
        ("compact_c2.json", compact_doc("compact C2", &catalog::sp(2))),
        ("compact_d4.json", compact_doc("compact D4", &catalog::so(8))),
        ("compact_g2.json", compact_doc("compact G2", &catalog::g2())),
        ("compact_f4.json", compact_doc("compact F4", &catalog::f4())),
        ("compact_e8.json", compact_doc("compact E8", &catalog::e8())),
    ];

    for (name, doc) in docs {
        let path = dir.join(name);
        let mut text = serde_json::to_string_pretty(&doc).expect("documents serialize");
        text.push('\n');
        fs::write(&path, text).expect("write document");
        println!("wrote {}", path.display());
    }
}
