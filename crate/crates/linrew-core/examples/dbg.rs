use linrew_core::confluence::{
    check_decreasing_capped, enumerate_critical_branchings, Branching, Labeling,
};
use linrew_core::lincomb::LinComb;
use linrew_core::presets::preset_aobbar;
use linrew_core::rewrite::{Engine, RewriteStep};
use num_rational::BigRational;
use num_traits::One;
use std::sync::Arc;
use std::time::Instant;

fn main() {
    let engine = Engine::new(Arc::new(preset_aobbar(2).unwrap()));
    let labeling = Labeling::new(&engine, 5_000);
    let cbs = enumerate_critical_branchings(&engine, 6).unwrap();
    eprintln!("{} branchings", cbs.len());
    let t_all = Instant::now();
    let mut bad = 0;
    for cb in &cbs {
        let src = LinComb::from_monomial(cb.overlap.clone());
        let mk = |rule_name: &str, ctx: &linrew_core::diagram::Context| -> RewriteStep {
            let rule = engine.polygraph.rule(rule_name).unwrap();
            RewriteStep {
                rule: rule_name.to_string(),
                context: ctx.clone(),
                coefficient: BigRational::one(),
                remainder: LinComb::zero(src.src().clone(), src.tgt().clone()),
                source: src.clone(),
                target: rule.rhs.plug_into(ctx).unwrap(),
            }
        };
        let b = Branching {
            source: src.clone(),
            left: vec![mk(&cb.left_rule, &cb.left_context)],
            right: vec![mk(&cb.right_rule, &cb.right_context)],
        };
        let t = Instant::now();
        let mut rep = None;
        for d in [3usize, 6, 9] {
            let r = check_decreasing_capped(&engine, &b, &labeling, d, 20_000).unwrap();
            let ok = r.decreasing && r.measure_non_increasing;
            rep = Some(r);
            if ok {
                break;
            }
        }
        let rep = rep.unwrap();
        let dt = t.elapsed();
        let ok = rep.decreasing && rep.measure_non_increasing;
        if !ok {
            bad += 1;
        }
        if dt.as_secs_f64() > 2.0 || !ok {
            println!(
                "{} / {}: dec={} meas={} strict={} flag={} in {:?} [{}]",
                cb.left_rule,
                cb.right_rule,
                rep.decreasing,
                rep.measure_non_increasing,
                rep.strict,
                rep.budget_flag,
                dt,
                cb.overlap,
            );
        }
    }
    println!("total {:?}, bad {}", t_all.elapsed(), bad);
}
