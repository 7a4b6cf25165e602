//! Built-in regression pipelines: the figure data and the worked examples,
//! checked against stored expected values. Each check yields a label and a
//! pass flag.

use tropos_core::abelian::{Character, Presentation};
use tropos_core::alexander::{
    audit_inclusion, bnsr_upper_bound, dwyer_fried_test, jump_ideal, presentation_complex,
    BnsFixture, DEFAULT_MINOR_CAP,
};
use tropos_core::geometry::{ArcPiece, CircleSet, Dir};
use tropos_core::laurent::{parse_polynomial, LaurentPoly};
use tropos_core::tropical::{
    prevariety, sphere_project, trop_hypersurface_field, trop_hypersurface_z,
    trop_z_decomposition, Provenance, SphericalSet, TropRing, Verdict,
};
use tropos_core::valuation;
use tropos_core::abelian::FGAbelianGroup;

pub struct Check {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

fn check(out: &mut Vec<Check>, label: &str, pass: bool, detail: String) {
    out.push(Check { label: label.to_string(), pass, detail });
}

fn d(x: i64, y: i64) -> Dir {
    Dir::from_i64(x, y)
}

fn poly2(s: &str) -> LaurentPoly {
    parse_polynomial(s, &FGAbelianGroup::free(2)).unwrap()
}

fn poly1(s: &str) -> LaurentPoly {
    parse_polynomial(s, &FGAbelianGroup::free(1)).unwrap()
}

/// The six figure panels for `x1 + x2 - 2`.
pub fn figure_line(out: &mut Vec<Check>) {
    let f = poly2("x1 + x2 - 2");

    // (a) trivial valuation: three rays from the origin
    let triv = trop_hypersurface_field(&f, &valuation::trivial()).unwrap();
    let s_triv = sphere_project(&triv);
    let expect_a = SphericalSet::Dim2(CircleSet::from_points([d(1, 0), d(0, 1), d(-1, -1)]));
    check(
        out,
        "figure-a trivial rays",
        s_triv == expect_a && triv.contains(&Character::from_i64(&[0, 0])),
        format!("{s_triv:?}"),
    );

    // (b) mod 2: the diagonal line
    let mod2 = trop_hypersurface_field(&f, &valuation::modp(2).unwrap()).unwrap();
    let s_mod2 = sphere_project(&mod2);
    let expect_b = SphericalSet::Dim2(CircleSet::from_points([d(1, 1), d(-1, -1)]));
    check(
        out,
        "figure-b mod-2 line",
        s_mod2 == expect_b && mod2.contains(&Character::from_i64(&[4, 4])),
        format!("{s_mod2:?}"),
    );

    // (c) 2-adic: fan with vertex (1,1)
    let padic = trop_hypersurface_field(&f, &valuation::padic(2).unwrap()).unwrap();
    let vertex_ok = padic.contains(&Character::from_i64(&[1, 1]))
        && padic.contains(&Character::from_i64(&[1, 3]))
        && padic.contains(&Character::from_i64(&[3, 1]))
        && padic.contains(&Character::from_i64(&[0, 0]))
        && !padic.contains(&Character::from_i64(&[2, 2]))
        && !padic.contains(&Character::from_i64(&[0, 1]));
    check(out, "figure-c 2-adic fan", vertex_ok, "vertex (1,1) membership".into());

    // (d) Z-trop: the rays plus the closed positive quadrant
    let z = trop_hypersurface_z(&f).unwrap();
    let quadrant_ok = z.contains(&Character::from_i64(&[1, 2]))
        && z.contains(&Character::from_i64(&[0, 3]))
        && z.contains(&Character::from_i64(&[-2, -2]))
        && !z.contains(&Character::from_i64(&[-1, 2]))
        && !z.contains(&Character::from_i64(&[-1, -2]));
    check(out, "figure-d Z-trop quadrant", quadrant_ok, "quadrant membership".into());

    // (e) sphere union of (a) and (b): four points
    let four = s_triv.union(&s_mod2);
    let expect_e =
        SphericalSet::Dim2(CircleSet::from_points([d(1, 0), d(0, 1), d(1, 1), d(-1, -1)]));
    check(out, "figure-e four points", four == expect_e, format!("{four:?}"));

    // (f) sphere of (d): three points and the closed arc, equal to the
    // union over the whole valuation family
    let s_z = sphere_project(&z);
    let expect_f = SphericalSet::Dim2(
        CircleSet::from_points([d(-1, -1)])
            .union(&CircleSet::from_pieces(vec![], vec![ArcPiece::closed(d(1, 0), d(0, 1))])),
    );
    let mut family = SphericalSet::empty(2);
    for (_, r) in trop_z_decomposition(&f).unwrap() {
        family = family.union(&sphere_project(&r));
    }
    check(
        out,
        "figure-f sphere identity",
        s_z == expect_f && s_z.eq_sets(&family) == Verdict::True,
        format!("{s_z:?}"),
    );
}

/// Baumslag-Solitar group BS(1,2).
pub fn example_bs12(out: &mut Vec<Check>) {
    let p = Presentation::parse("gens: a b\nrel: a b a^-1 b^-2\n").unwrap();
    let (chain, _) = presentation_complex(&p).unwrap();
    let j1 = jump_ideal(&chain, 1, DEFAULT_MINOR_CAP).unwrap();
    let expect = poly1("x1 - 1").mul(&poly1("x1 - 2")).unwrap().normalize_unit();
    check(
        out,
        "bs12 fox principal part",
        j1.principal_part.as_ref() == Some(&expect),
        format!("{:?}", j1.principal_part.as_ref().map(|f| f.to_string())),
    );
    let bound = bnsr_upper_bound(&p, DEFAULT_MINOR_CAP).unwrap();
    check(
        out,
        "bs12 sphere {+chi}",
        bound.sphere == SphericalSet::Dim1 { neg: false, pos: true }
            && bound.provenance == Provenance::Exact,
        format!("{:?}", bound.sphere),
    );
    let field = prevariety(&j1.generators, &TropRing::Field(valuation::trivial())).unwrap();
    check(
        out,
        "bs12 field sphere empty",
        sphere_project(&field).is_empty(),
        "S(Trop over a field)".into(),
    );
    let fixture = BnsFixture {
        id: "bs12".into(),
        sigma1: SphericalSet::Dim1 { neg: true, pos: false },
        citation: "Brown's algorithm".into(),
    };
    let report = audit_inclusion(&fixture, bound.complement.as_ref().unwrap());
    check(
        out,
        "bs12 fixture equals complement",
        report.included == Verdict::True && report.strict == Verdict::False,
        format!("{report:?}"),
    );
}

/// The one-relator group from Brown's worked example.
pub fn example_brown(out: &mut Vec<Check>) {
    let p = Presentation::parse(
        "gens: a b\nrel: a^-1 b^-1 a b^2 a^-1 b^-1 a^2 b^-1 a^-1 b a^-1 b a b^-1\n",
    )
    .unwrap();
    let (chain, ab) = presentation_complex(&p).unwrap();
    let fox_a = &chain.boundaries[1][0][0];
    let fox_b = &chain.boundaries[1][1][0];
    let expect_a = poly2("x1^-1*x2^-1 - x1^-1 - x2^-1 + 1");
    let expect_b = poly2("-x1*x2^-1 + 2*x2^-1 - x1^-1*x2^-1");
    check(
        out,
        "brown fox entries",
        ab.group.rank == 2 && fox_a == &expect_a && fox_b == &expect_b,
        format!("({fox_a}, {fox_b})"),
    );
    let bound = bnsr_upper_bound(&p, DEFAULT_MINOR_CAP).unwrap();
    let expect_sphere = SphericalSet::Dim2(CircleSet::from_points([d(0, 1), d(0, -1)]));
    check(
        out,
        "brown sphere two points",
        bound.sphere == expect_sphere && bound.provenance == Provenance::Exact,
        format!("{:?}", bound.sphere),
    );
    let fixture = BnsFixture {
        id: "brown".into(),
        sigma1: SphericalSet::Dim2(CircleSet::from_pieces(
            vec![],
            vec![
                ArcPiece::new(d(1, 0), d(0, 1), false, false),
                ArcPiece::new(d(0, 1), d(-1, -1), false, false),
            ],
        )),
        citation: "Brown's algorithm".into(),
    };
    let report = audit_inclusion(&fixture, bound.complement.as_ref().unwrap());
    check(
        out,
        "brown fixture strictly included",
        report.included == Verdict::True && report.strict == Verdict::True,
        format!("{report:?}"),
    );
}

/// The synthetic one-relator family with prescribed Fox row, at
/// `f = x1 + x2 - 2`.
pub fn example_synthetic(out: &mut Vec<Check>) {
    use tropos_core::alexander::ChainData;
    let f = poly2("x1 + x2 - 2");
    let x1m1 = poly2("x1 - 1");
    let x2m1 = poly2("x2 - 1");
    let chain = ChainData::new(
        FGAbelianGroup::free(2),
        vec![1, 2, 1],
        vec![
            vec![vec![x1m1.clone(), x2m1.clone()]],
            vec![vec![f.mul(&x2m1).unwrap()], vec![f.mul(&x1m1).unwrap().neg()]],
        ],
    )
    .unwrap();
    let j1 = jump_ideal(&chain, 1, DEFAULT_MINOR_CAP).unwrap();
    let principal = j1.principal_part.as_ref().unwrap();
    let residual_region = prevariety(&j1.residual, &TropRing::Z).unwrap();
    check(
        out,
        "synthetic principal part f",
        principal == &f.normalize_unit()
            && residual_region.is_within_origin()
            && sphere_project(&residual_region).is_empty(),
        format!("principal = {principal}"),
    );
    // strictness of the field union against the Z sphere
    let s_z = sphere_project(&trop_hypersurface_z(&f).unwrap());
    let triv = sphere_project(&trop_hypersurface_field(&f, &valuation::trivial()).unwrap());
    let mod2 =
        sphere_project(&trop_hypersurface_field(&f, &valuation::modp(2).unwrap()).unwrap());
    let union = triv.union(&mod2);
    check(
        out,
        "synthetic strict inclusion",
        union.is_subset(&s_z) == Verdict::True && union.eq_sets(&s_z) == Verdict::False,
        "field union vs Z sphere".into(),
    );
}

/// The finite-generation test on `(x - 2)`.
pub fn example_dwyer_fried(out: &mut Vec<Check>) {
    let g = poly1("x1 - 2");
    let over_z = dwyer_fried_test(std::slice::from_ref(&g), &TropRing::Z).unwrap();
    let over_q =
        dwyer_fried_test(std::slice::from_ref(&g), &TropRing::Field(valuation::trivial())).unwrap();
    let over_f3 = dwyer_fried_test(
        std::slice::from_ref(&g),
        &TropRing::Field(valuation::modp(3).unwrap()),
    )
    .unwrap();
    check(
        out,
        "dwyer-fried x-2",
        over_z == Verdict::False && over_q == Verdict::True && over_f3 == Verdict::True,
        format!("Z: {over_z:?}, Q: {over_q:?}, F3: {over_f3:?}"),
    );
}

pub fn run_all() -> Vec<Check> {
    let mut out = vec![];
    figure_line(&mut out);
    example_bs12(&mut out);
    example_brown(&mut out);
    example_synthetic(&mut out);
    example_dwyer_fried(&mut out);
    out
}
