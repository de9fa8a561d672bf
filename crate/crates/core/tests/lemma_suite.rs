use rnkit::auxdioph::*;
use rnkit::Integer;

fn tuple(v: &[i64]) -> Vec<Integer> {
    v.iter().map(|&x| Integer::from(x)).collect()
}

#[test]
fn default_suite_is_confirmed() {
    let reports = run_all(&SearchBounds::default()).unwrap();
    assert_eq!(reports.len(), LEMMA_IDS.len());
    for (r, id) in reports.iter().zip(LEMMA_IDS) {
        assert_eq!(r.lemma, id);
        assert!(r.confirmed(), "{id}: found {:?}", r.found);
    }
}

#[test]
fn tightened_bounds_keep_claimed_inside() {
    let r = run_lemma("2.8", &SearchBounds::new(&[("x", 100), ("y", 100), ("m", 20), ("n", 20)]).unwrap()).unwrap();
    assert_eq!(r.found, vec![tuple(&[3, 2, 2, 3])]);
    let r = run_lemma("2.11", &SearchBounds::new(&[("r", 30), ("s", 30)]).unwrap()).unwrap();
    assert_eq!(r.found.len(), 3);
    assert!(r.confirmed());
    let r = run_lemma("2.11", &SearchBounds::new(&[("r", 2)]).unwrap()).unwrap();
    assert!(r.found.is_empty());
}

#[test]
fn defective_report_mentions_large_entry() {
    let r = run_lemma("2.18", &SearchBounds::default()).unwrap();
    assert!(r.found.contains(&tuple(&[7, 14, -22])));
    assert!(r.note.unwrap().contains("(14, -22)"));
}
