//! Property tests for the algebraic invariants of the diagram calculus:
//! canonicalization, bilinearity, composition laws, and JSON round-trips.

use linrew_core::diagram::{try_swap, Monomial, Slice};
use linrew_core::io::{parse_lincomb, parse_monomial};
use linrew_core::lincomb::LinComb;
use linrew_core::polygraph::Polygraph;
use linrew_core::presets::preset_aobbar;
use linrew_core::word::Word;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn polygraph() -> Arc<Polygraph> {
    Arc::new(preset_aobbar(2).unwrap())
}

/// Deterministically build a random well-formed monomial from a seed.
fn monomial_from_seed(p: &Polygraph, seed: u64, max_slices: usize, max_strands: usize) -> Monomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let src_len = rng.gen_range(0..=max_strands.min(3));
    let src: String = (0..src_len)
        .map(|_| if rng.gen_bool(0.5) { '^' } else { 'v' })
        .collect();
    let src = Word::parse(&src).unwrap();
    let n = rng.gen_range(0..=max_slices);
    let mut rows = Vec::new();
    let mut cur = src.clone();
    for _ in 0..n {
        let mut cands = Vec::new();
        for gen in &p.generators {
            let k = gen.src.len();
            if k > cur.len() || cur.len() - k + gen.tgt.len() > max_strands {
                continue;
            }
            for off in 0..=cur.len() - k {
                if cur.sub(off, off + k) == gen.src {
                    cands.push((gen.clone(), off));
                }
            }
        }
        if cands.is_empty() {
            break;
        }
        let (gen, off) = cands[rng.gen_range(0..cands.len())].clone();
        let left = cur.prefix(off);
        let right = cur.suffix_from(off + gen.src.len());
        cur = left.concat(&gen.tgt).concat(&right);
        rows.push(Slice::new(left, gen, right));
    }
    Monomial::new(src, rows).unwrap()
}

fn rational(num: i32, den: u8) -> BigRational {
    BigRational::new(num.into(), i32::from(den.max(1)).into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Rebuilding a monomial from its own canonical slices is the identity,
    /// and any sequence of valid adjacent exchanges leaves it unchanged.
    #[test]
    fn canonicalization_is_exchange_invariant(seed in any::<u64>(), swaps in proptest::collection::vec(any::<u32>(), 0..12)) {
        let p = polygraph();
        let m = monomial_from_seed(&p, seed, 6, 4);
        let rebuilt = Monomial::new(m.src().clone(), m.slices().to_vec()).unwrap();
        prop_assert_eq!(&rebuilt, &m);
        let mut rows = m.slices().to_vec();
        for s in swaps {
            if rows.len() < 2 { break; }
            let i = (s as usize) % (rows.len() - 1);
            let opts = try_swap(&rows[i], &rows[i + 1]);
            if let Some((b, a)) = opts.into_iter().next() {
                rows[i] = b;
                rows[i + 1] = a;
            }
        }
        prop_assert_eq!(Monomial::new(m.src().clone(), rows).unwrap(), m);
    }

    /// try_swap produces genuine reorderings: every swapped pair stacks to the
    /// same canonical two-row monomial.
    #[test]
    fn swapped_rows_stack_to_the_same_diagram(seed in any::<u64>()) {
        let p = polygraph();
        let m = monomial_from_seed(&p, seed, 2, 4);
        if m.slices().len() == 2 {
            let (a, b) = (m.slices()[0].clone(), m.slices()[1].clone());
            for (b2, a2) in try_swap(&a, &b) {
                let swapped = Monomial::new(m.src().clone(), vec![b2, a2]).unwrap();
                prop_assert_eq!(swapped, m.clone());
            }
        }
    }

    /// Splitting a monomial's rows at any index and recomposing vertically
    /// gives back the original.
    #[test]
    fn vertical_split_recomposes(seed in any::<u64>(), at in any::<u32>()) {
        let p = polygraph();
        let m = monomial_from_seed(&p, seed, 6, 4);
        let rows = m.slices().to_vec();
        let k = (at as usize) % (rows.len() + 1);
        // The boundary word between rows k-1 and k.
        let mut mid = m.src().clone();
        for s in &rows[..k] {
            let l = s.left.len();
            mid = mid.prefix(l).concat(&s.gen.tgt).concat(&mid.suffix_from(l + s.gen.src.len()));
        }
        let top = Monomial::new(m.src().clone(), rows[..k].to_vec()).unwrap();
        let bottom = Monomial::new(mid, rows[k..].to_vec()).unwrap();
        prop_assert_eq!(top.compose1(&bottom).unwrap(), m);
    }

    /// Horizontal then vertical composition obeys the interchange law on
    /// stackable pieces: (a | b) over (c | d) equals (a over c) | (b over d).
    #[test]
    fn interchange_law(sa in any::<u64>(), sb in any::<u64>(), ka in any::<u32>(), kb in any::<u32>()) {
        let p = polygraph();
        let ma = monomial_from_seed(&p, sa, 4, 3);
        let mb = monomial_from_seed(&p, sb, 4, 3);
        let ra = ma.slices().to_vec();
        let rb = mb.slices().to_vec();
        let ia = (ka as usize) % (ra.len() + 1);
        let ib = (kb as usize) % (rb.len() + 1);
        let mid = |m: &Monomial, k: usize| {
            let mut w = m.src().clone();
            for s in &m.slices()[..k] {
                let l = s.left.len();
                w = w.prefix(l).concat(&s.gen.tgt).concat(&w.suffix_from(l + s.gen.src.len()));
            }
            w
        };
        let (wa, wb) = (mid(&ma, ia), mid(&mb, ib));
        let a = Monomial::new(ma.src().clone(), ra[..ia].to_vec()).unwrap();
        let c = Monomial::new(wa, ra[ia..].to_vec()).unwrap();
        let b = Monomial::new(mb.src().clone(), rb[..ib].to_vec()).unwrap();
        let d = Monomial::new(wb, rb[ib..].to_vec()).unwrap();
        let lhs = a.compose0(&b).unwrap().compose1(&c.compose0(&d).unwrap()).unwrap();
        let rhs = a.compose1(&c).unwrap().compose0(&b.compose1(&d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Linear-combination arithmetic: commutativity, inverses, scalar
    /// distributivity, and bilinearity of vertical composition.
    #[test]
    fn lincomb_arithmetic(seed in any::<u64>(), n1 in -9i32..=9, d1 in 1u8..=6, n2 in -9i32..=9, d2 in 1u8..=6) {
        let p = polygraph();
        let m = monomial_from_seed(&p, seed, 5, 3);
        let k = rational(n1, d1);
        let l = rational(n2, d2);
        let a = LinComb::term(k.clone(), m.clone());
        let b = LinComb::term(l.clone(), m.clone());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        let sum_scaled = a.add(&b).unwrap().scale(&k);
        let scaled_sum = a.scale(&k).add(&b.scale(&k)).unwrap();
        prop_assert_eq!(sum_scaled, scaled_sum);
        // Identities are two-sided units for vertical composition.
        let id_src = LinComb::identity(m.src().clone());
        let id_tgt = LinComb::identity(m.tgt().clone());
        prop_assert_eq!(id_src.compose1(&a).unwrap(), a.clone());
        prop_assert_eq!(a.compose1(&id_tgt).unwrap(), a.clone());
    }

    /// Whiskering by boundary words agrees with horizontal composition with
    /// identities.
    #[test]
    fn whisker_matches_identity_composition(seed in any::<u64>(), l in 0usize..=2, r in 0usize..=2) {
        let p = polygraph();
        let m = monomial_from_seed(&p, seed, 4, 3);
        let a = LinComb::from_monomial(m);
        let lw = Word::parse(&"^".repeat(l)).unwrap();
        let rw = Word::parse(&"v".repeat(r)).unwrap();
        let whiskered = a.whisker(&lw, &rw).unwrap();
        let composed = LinComb::identity(lw)
            .compose0(&a)
            .unwrap()
            .compose0(&LinComb::identity(rw))
            .unwrap();
        prop_assert_eq!(whiskered, composed);
    }

    /// JSON serialization round-trips monomials and linear combinations.
    #[test]
    fn json_round_trip(seed in any::<u64>(), n in -9i32..=9, d in 1u8..=6) {
        let p = polygraph();
        let m = monomial_from_seed(&p, seed, 5, 3);
        let json = serde_json::to_string(&m).unwrap();
        prop_assert_eq!(parse_monomial(&json, &p).unwrap(), m.clone());
        let c = LinComb::term(rational(n, d), m);
        let json = serde_json::to_string(&c).unwrap();
        prop_assert_eq!(parse_lincomb(&json, &p).unwrap(), c);
    }

    /// Word parsing round-trips through display.
    #[test]
    fn word_parse_display_round_trip(s in "[\\^v]{0,8}") {
        let w = Word::parse(&s).unwrap();
        prop_assert_eq!(w.to_string(), s);
    }
}
