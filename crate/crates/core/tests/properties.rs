use chargelab::doc::{function_to_json, load_function, load_set, set_to_json, SpaceDoc};
use chargelab::function::{equal_ae, pseudometric, EqualityMethod};
use chargelab::integration::integrate;
use chargelab::oracle::brute;
use chargelab::rational::{frac, int};
use chargelab::{ChargeSpace, EpSet, Field, FiniteChargeSpace, FunctionRep, NatFieldKind, PointSet, Realized, Subset, Q};
use proptest::prelude::*;

fn bits(max: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(any::<bool>(), 0..=max).prop_map(|v| v.into_iter().map(|b| if b { '1' } else { '0' }).collect())
}

fn ep_set() -> impl Strategy<Value = EpSet> {
    (bits(5), bits(6).prop_filter("nonempty period", |s| !s.is_empty())).prop_map(|(pre, per)| EpSet::from_bits(&pre, &per).unwrap())
}

/// A finite space: points labelled by atom, numerators over 12.
fn finite_space() -> impl Strategy<Value = FiniteChargeSpace> {
    (1usize..=6)
        .prop_flat_map(|n| (prop::collection::vec(0..n, n), prop::collection::vec(0i64..=12, n)))
        .prop_map(|(labels, nums)| {
            let n = labels.len();
            let mut atoms: Vec<PointSet> = Vec::new();
            let mut seen: Vec<usize> = Vec::new();
            for (p, l) in labels.iter().enumerate() {
                match seen.iter().position(|x| x == l) {
                    Some(i) => atoms[i] = atoms[i].union(PointSet::singleton(p)),
                    None => {
                        seen.push(*l);
                        atoms.push(PointSet::singleton(p));
                    }
                }
            }
            let weights = (0..atoms.len()).map(|i| frac(nums[i], 12)).collect();
            FiniteChargeSpace::new(Field::from_atoms(n, atoms).unwrap(), weights).unwrap()
        })
}

fn values(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec((-8i64..=8, 1i64..=4), n).prop_map(|v| v.into_iter().map(|(p, q)| frac(p, q)).collect())
}

/// A function constant on atoms, hence measurable.
fn measurable(s: &FiniteChargeSpace, per_atom: &[Q]) -> Vec<Q> {
    (0..s.n()).map(|p| per_atom[s.field().atom_of(p) % per_atom.len()].clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ep_algebra_matches_membership(a in ep_set(), b in ep_set()) {
        let u = a.union(&b).unwrap();
        let i = a.inter(&b).unwrap();
        let d = a.diff(&b).unwrap();
        let c = a.complement();
        for n in 1..=120u64 {
            prop_assert_eq!(u.contains(n), a.contains(n) || b.contains(n));
            prop_assert_eq!(i.contains(n), a.contains(n) && b.contains(n));
            prop_assert_eq!(d.contains(n), a.contains(n) && !b.contains(n));
            prop_assert_eq!(c.contains(n), !a.contains(n));
        }
        prop_assert_eq!(u.density() + i.density(), a.density() + b.density());
    }

    #[test]
    fn ep_canonical_form_is_structural(a in ep_set()) {
        let again = EpSet::from_bits(&a.preperiod_str(), &a.period_str()).unwrap();
        prop_assert_eq!(&again, &a);
        let doubled = format!("{}{}", a.period_str(), a.period_str());
        prop_assert_eq!(EpSet::from_bits(&a.preperiod_str(), &doubled).unwrap(), a);
    }

    #[test]
    fn outer_and_inner_match_oracle(s in finite_space(), mask in any::<u64>()) {
        let a = PointSet(mask & PointSet::full(s.n()).0);
        let cs = ChargeSpace::Finite(s.clone());
        prop_assert_eq!(cs.outer_charge(&Subset::Points(a)).unwrap(), brute::outer_charge(&s, a));
        prop_assert_eq!(cs.inner_charge(&Subset::Points(a)).unwrap(), brute::inner_charge(&s, a));
    }

    #[test]
    fn integral_is_linear_on_measurable(s in finite_space(), fa in values(6), ga in values(6), c in -3i64..=3) {
        let f = measurable(&s, &fa);
        let g = measurable(&s, &ga);
        let cs = ChargeSpace::Finite(s.clone());
        let rf = Realized::Finite(f.clone());
        let rg = Realized::Finite(g.clone());
        let jf = integrate(&cs, &rf, 8).unwrap().value;
        let jg = integrate(&cs, &rg, 8).unwrap().value;
        prop_assert_eq!(&jf, &brute::integral(&s, &f));
        let h = rf.scale(&int(c)).add(&rg).unwrap();
        prop_assert_eq!(integrate(&cs, &h, 8).unwrap().value, int(c) * jf + jg);
    }

    #[test]
    fn distance_and_equality_match_oracle(s in finite_space(), f in values(6), g in values(6)) {
        let f = f[..s.n()].to_vec();
        let g = g[..s.n()].to_vec();
        let cs = ChargeSpace::Finite(s.clone());
        let (rf, rg) = (Realized::Finite(f.clone()), Realized::Finite(g.clone()));
        prop_assert_eq!(pseudometric(&cs, &rf, &rg).unwrap(), brute::pseudometric(&s, &f, &g));
        prop_assert_eq!(equal_ae(&cs, &rf, &rg, EqualityMethod::Direct).unwrap(), brute::equal_ae(&s, &f, &g));
    }

    #[test]
    fn nat_documents_round_trip(a in ep_set(), c in -5i64..=5) {
        let doc = SpaceDoc::numbered(ChargeSpace::Naturals(NatFieldKind::EventuallyPeriodic));
        let set = Subset::Nat(a);
        prop_assert_eq!(load_set(&set_to_json(&set, &doc), &doc).unwrap(), set.clone());
        let f = FunctionRep::Affine {
            a: int(c),
            f: Box::new(FunctionRep::Reciprocal { scale: int(1) }),
            b: int(1),
            g: Box::new(FunctionRep::Indicator(set)),
        };
        let r = f.realize(doc.universe()).unwrap();
        let back = load_function(&function_to_json(&f, &doc), &doc).unwrap();
        prop_assert_eq!(back.realize(doc.universe()).unwrap(), r);
    }
}
