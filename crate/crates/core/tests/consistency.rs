use schubert_core::partitions::{enumerate_box, Ambient, CodimFilter};
use schubert_core::rigidity::{verdict, Equality, Limits, Verdict};

#[test]
fn pillars_agree_on_small_grassmannians() {
    for (m, n) in [(2, 4), (2, 5), (3, 5), (3, 6), (2, 6), (4, 6)] {
        for a in enumerate_box(Ambient::new(m, n).unwrap(), CodimFilter::default()) {
            let r = verdict(&a, &Limits::default()).unwrap();
            if let Verdict::ConsistencyFailure { reasons } = &r.verdict {
                panic!("{a}: {reasons:?}");
            }
            let Some(t) = r.tangent.value() else { continue };
            let all_false = r.certificates.value().unwrap().iter().all(|c| !c.in_ia);
            assert_eq!(all_false, t.verdict == Equality::Equal, "{a}");
            // on these boxes the exception rule is exact, not just sufficient
            assert_eq!(r.exception_boxes.is_empty(), t.verdict == Equality::Equal, "{a}");
            if r.theorem_condition == Some(true) {
                assert_eq!(r.verdict, Verdict::SchurRigid, "{a}");
            }
        }
    }
}
