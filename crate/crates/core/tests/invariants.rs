//! Cross-module identities over the builtin corpus.

use ncgraded::duality::{
    as_check, as_regularity, default_window, diagonal_bimodule_resolution, hochschild_ext, AsVerdict,
};
use ncgraded::exactla::FieldSpec;
use ncgraded::groebner::complete;
use ncgraded::hilbert::hilbert_function;
use ncgraded::presentation::{builtin, builtin_names, opposite};
use ncgraded::resolution::{betti, gldim_upto, minimal_resolution};

const P: FieldSpec = FieldSpec::Prime(32003);
const D: u32 = 7;
const H: usize = 5;

fn as_verdict(name: &str) -> (AsVerdict, AsVerdict) {
    let p = builtin(name, P).unwrap();
    let rs = complete(&p, D);
    let res = minimal_resolution(&rs, H, D).unwrap();
    let gl = gldim_upto(&betti(&res));
    let comp = as_regularity(&p, &rs, &res, &gl).unwrap();
    (comp.verdict, as_check(&comp.right, &comp.left, &gl))
}

#[test]
fn verdict_is_symmetric_under_swapping_sides() {
    for name in builtin_names() {
        let (v, swapped) = as_verdict(name);
        match (&v, &swapped) {
            (AsVerdict::Fails { .. }, AsVerdict::Fails { .. }) => {}
            _ => assert_eq!(v, swapped, "{name}"),
        }
    }
}

#[test]
fn opposite_algebra_has_the_same_verdict() {
    for name in ["quantum-plane-2", "skew-3", "cubic-as3", "smith-zhang"] {
        let p = opposite(&builtin(name, P).unwrap());
        let rs = complete(&p, D);
        let res = minimal_resolution(&rs, H, D).unwrap();
        let gl = gldim_upto(&betti(&res));
        let op = as_regularity(&p, &rs, &res, &gl).unwrap().verdict;
        let (v, _) = as_verdict(name);
        assert_eq!(op.regular(), v.regular(), "{name}");
    }
}

#[test]
fn hochschild_ext_concentrates_for_regular_algebras() {
    for name in builtin_names() {
        let (v, _) = as_verdict(name);
        let Some((n, l)) = v.regular() else { continue };
        let p = builtin(name, P).unwrap();
        let dims = hilbert_function(&complete(&p, D + 6), D + 6).unwrap();
        let bm = diagonal_bimodule_resolution(&p, H, D).unwrap();
        let t = hochschild_ext(&bm.rewrite, &bm.resolution, default_window(&bm.resolution)).unwrap();
        let mut seen = 0;
        for e in t.entries.iter().filter(|e| e.certified) {
            if e.i == n {
                assert_eq!(e.dim, dims.get(e.j + l), "{name}: Ext^{n}_{}", e.j);
                seen += 1;
            } else {
                assert_eq!(e.dim, 0, "{name}: Ext^{}_{}", e.i, e.j);
            }
        }
        assert!(seen > 0, "{name}: no certified Ext^{n} entries");
    }
}
