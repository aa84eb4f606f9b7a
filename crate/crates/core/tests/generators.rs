use sunflower_interval::generators::{
    gen_betweenness_proper, gen_betweenness_unit, gen_random_any, gen_random_yes, gen_random_yes_certified,
    random_betweenness, BetweennessInstance, RandomParams, Spread,
};
use sunflower_interval::io::instance_to_json;
use sunflower_interval::oracle::general::{general_representable, general_representation};
use sunflower_interval::oracle::{brute_force_proper, check_representation};
use sunflower_interval::rational::{frac, Interval, Rational};
use sunflower_interval::simultaneous::recognize_proper;
use sunflower_interval::unit::recognize_unit;
use sunflower_interval::{Graph, Mode, Representation, SunflowerInstance};

/// Betweenness by trying every order, written out independently of the library.
fn satisfiable(ground: &[String], triples: &[[String; 3]]) -> bool {
    fn go(rest: &mut Vec<String>, placed: &mut Vec<String>, triples: &[[String; 3]]) -> bool {
        if rest.is_empty() {
            let at = |x: &String| placed.iter().position(|y| y == x).unwrap();
            return triples.iter().all(|[a, b, c]| {
                let (a, b, c) = (at(a), at(b), at(c));
                (a < b && b < c) || (c < b && b < a)
            });
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            placed.push(x);
            let ok = go(rest, placed, triples);
            let x = placed.pop().unwrap();
            rest.insert(i, x);
            if ok {
                return true;
            }
        }
        false
    }
    go(&mut ground.to_vec(), &mut Vec::new(), triples)
}

fn bw(ground: &[&str], triples: &[[&str; 3]]) -> BetweennessInstance {
    BetweennessInstance::new(ground.to_vec(), triples.to_vec()).unwrap()
}

#[test]
fn betweenness_examples() {
    let one = bw(&["1", "2", "3"], &[["1", "2", "3"]]);
    assert!(general_representable(&gen_betweenness_proper(&one), Mode::Proper).unwrap());
    let clash = bw(&["a", "b", "c"], &[["a", "b", "c"], ["b", "c", "a"]]);
    assert!(!satisfiable(&clash.ground, &clash.triples));
    assert!(!general_representable(&gen_betweenness_proper(&clash), Mode::Proper).unwrap());
    assert!(!general_representable(&gen_betweenness_unit(&clash), Mode::Unit).unwrap());
    let none = bw(&["a", "b", "c", "d"], &[]);
    assert!(general_representable(&gen_betweenness_proper(&none), Mode::Proper).unwrap());
    assert!(general_representable(&gen_betweenness_unit(&none), Mode::Unit).unwrap());
}

#[test]
fn malformed_betweenness_is_rejected() {
    assert!(BetweennessInstance::new(vec!["a", "a"], vec![]).is_err());
    assert!(BetweennessInstance::new(vec!["a", "b", "c"], vec![["a", "b", "z"]]).is_err());
    assert!(BetweennessInstance::new(vec!["a", "b", "c"], vec![["a", "b", "a"]]).is_err());
}

#[test]
fn gadgets_are_not_sunflowers() {
    let inst = gen_betweenness_proper(&bw(&["a", "b", "c"], &[["a", "b", "c"]]));
    assert!(!inst.is_sunflower());
    assert!(recognize_proper(&inst).is_err());
    assert!(recognize_unit(&inst).is_err());
}

/// Chain vertices spaced 3/4 apart from a towards b, mirrored around b
/// for the y side.
#[test]
fn unit_gadget_explicit_placement() {
    let single = bw(&["a", "b", "c"], &[["a", "b", "c"]]);
    let inst = gen_betweenness_unit(&single);
    let n = 3;
    let step = frac(3, 4);
    let x_left = |j: i64| frac(1, 2) + &step * Rational::from_integer((j - 1).into());
    let b_left = x_left(2 * n) + frac(1, 1);
    let mirror = &b_left * frac(2, 1) + frac(1, 1);
    let mut rep = Representation::default();
    let put = |rep: &mut Representation, name: String, l: Rational| {
        rep.intervals.insert(name, Interval::unit(l));
    };
    put(&mut rep, "a".into(), frac(0, 1));
    put(&mut rep, "b".into(), b_left.clone());
    put(&mut rep, "c".into(), &mirror - frac(1, 1));
    for j in 1..=2 * n {
        let l = x_left(j);
        put(&mut rep, format!("x0_{j}"), l.clone());
        put(&mut rep, format!("y0_{j}"), &mirror - l - frac(1, 1));
    }
    assert_eq!(rep.len(), inst.vertex_count());
    let report = check_representation(&inst, &rep, Mode::Unit).unwrap();
    assert!(report.ok, "{report:?}");
}

#[test]
fn gadget_representability_is_betweenness() {
    for seed in 0..40u64 {
        let b = random_betweenness(seed, 3 + (seed % 4) as usize, 1 + (seed / 4 % 5) as usize);
        let sat = satisfiable(&b.ground, &b.triples);
        assert_eq!(b.solve_exhaustive(1000).unwrap().is_some(), sat, "seed {seed}");
        let proper = general_representation(&gen_betweenness_proper(&b), Mode::Proper, 10_000_000).unwrap();
        assert_eq!(proper.is_some(), sat, "seed {seed}: proper gadget");
        if let Some(rep) = proper {
            assert!(check_representation(&gen_betweenness_proper(&b), &rep, Mode::Proper).unwrap().ok);
        }
        let unit = general_representation(&gen_betweenness_unit(&b), Mode::Unit, 10_000_000).unwrap();
        assert_eq!(unit.is_some(), sat, "seed {seed}: unit gadget");
    }
}

#[test]
fn random_yes_instances_are_certified() {
    for seed in 0..60u64 {
        let (shared, private, k) = (1 + (seed % 5) as usize, (seed % 7) as usize, 1 + (seed % 4) as usize);
        let (inst, rep) = gen_random_yes_certified(seed, shared, private, k);
        assert!(inst.validate().ok, "seed {seed}");
        assert!(check_representation(&inst, &rep, Mode::Unit).unwrap().ok, "seed {seed}");
        assert!(recognize_unit(&inst).unwrap().is_yes(), "seed {seed}");
        assert_eq!(instance_to_json(&inst), instance_to_json(&gen_random_yes(seed, shared, private, k)));
    }
}

#[test]
fn random_generator_edge_cases() {
    let inst = gen_random_yes(3, 4, 0, 3);
    let names = |g: &Graph| {
        let mut v = g.names().to_vec();
        v.sort();
        v
    };
    for g in inst.graphs() {
        assert_eq!(names(g), names(&inst.graphs()[0]));
        assert_eq!(g.edge_count(), inst.shared_edges().len());
    }
    let params = RandomParams::new(2, 3, 2, 0);
    assert_eq!(instance_to_json(&gen_random_any(9, params)), instance_to_json(&gen_random_yes(9, 2, 3, 2)));
    let params = RandomParams { extra_edges: 4, ..params };
    assert_eq!(instance_to_json(&gen_random_any(9, params)), instance_to_json(&gen_random_any(9, params)));
    assert!(gen_random_any(9, params).validate().ok);
}

#[test]
fn wide_spread_is_sparser_and_still_unit() {
    let edges = |inst: &SunflowerInstance| inst.graphs().iter().map(|g| g.edge_count()).sum::<usize>();
    let (mut dense, mut wide) = (0, 0);
    for seed in 0..20u64 {
        let params = RandomParams::new(10, 30, 3, 0);
        let sparse = gen_random_any(seed, RandomParams { spread: Spread::Wide, ..params });
        assert!(recognize_unit(&sparse).unwrap().is_yes(), "seed {seed}");
        wide += edges(&sparse);
        dense += edges(&gen_random_any(seed, params));
    }
    assert!(2 * wide < dense, "wide {wide} dense {dense}");
}

#[test]
fn a_claw_is_proper_no() {
    let claw = Graph::build(&["c", "x", "y", "z"], &[("c", "x"), ("c", "y"), ("c", "z")]).unwrap();
    let inst = SunflowerInstance::new(vec![claw], Vec::<String>::new(), vec![]);
    assert!(!recognize_proper(&inst).unwrap().is_yes());
    assert!(!brute_force_proper(&inst, 10).unwrap());
}
