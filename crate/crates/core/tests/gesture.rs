use braillepad_core::gesture::{hit_test, Gesture, GestureEngine, TouchEvent};
use braillepad_core::Layout;
use proptest::prelude::*;

fn classify(events: &[TouchEvent], flush_at: u64) -> Vec<Gesture> {
    let mut engine = GestureEngine::default();
    let mut out = Vec::new();
    for &e in events {
        out.extend(engine.feed(e).unwrap());
    }
    out.extend(engine.flush(flush_at));
    out
}

fn shift(events: &[TouchEvent], dt: u64) -> Vec<TouchEvent> {
    events.iter().map(|e| TouchEvent { t: e.t + dt, ..*e }).collect()
}

#[test]
fn hit_test_tiles_every_layout() {
    let layouts = [
        Layout::Menu3,
        Layout::Menu2,
        Layout::Dot6,
        Layout::List { rows: 1 },
        Layout::List { rows: 5 },
        Layout::Text,
    ];
    for layout in layouts {
        let mut hits = vec![0usize; layout.region_count()];
        for i in 0..100 {
            for j in 0..100 {
                let (x, y) = (i as f64 / 99.0, j as f64 / 99.0);
                let r = hit_test(layout, x, y);
                assert!(r < layout.region_count(), "{layout:?} ({x},{y})");
                hits[r] += 1;
            }
        }
        assert!(hits.iter().all(|&h| h > 0), "{layout:?} has an unreachable region");
    }
}

#[test]
fn dot_layout_numbering() {
    assert_eq!(hit_test(Layout::Dot6, 0.2, 0.5), 1); // dot 2
    assert_eq!(hit_test(Layout::Dot6, 0.8, 0.9), 5); // dot 6
    assert_eq!(hit_test(Layout::Menu3, 0.5, 0.1), 0);
}

fn press() -> impl Strategy<Value = (f64, f64, f64, f64, u64, u64)> {
    (0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64, 0u64..900, 0u64..700)
}

fn stream(presses: &[(f64, f64, f64, f64, u64, u64)]) -> Vec<TouchEvent> {
    let mut t = 0;
    let mut out = Vec::new();
    for &(x0, y0, x1, y1, hold, gap) in presses {
        t += gap;
        out.push(TouchEvent::down(x0, y0, t));
        out.push(TouchEvent::moved((x0 + x1) / 2.0, (y0 + y1) / 2.0, t + hold / 2));
        t += hold;
        out.push(TouchEvent::up(x1, y1, t));
    }
    out
}

proptest! {
    #[test]
    fn time_translation_invariance(
        presses in proptest::collection::vec(press(), 0..8),
        dt in 0u64..10_000_000,
    ) {
        let events = stream(&presses);
        let end = events.last().map_or(0, |e| e.t) + 1000;
        prop_assert_eq!(classify(&events, end), classify(&shift(&events, dt), end + dt));
    }

    #[test]
    fn deterministic(presses in proptest::collection::vec(press(), 0..8)) {
        let events = stream(&presses);
        let end = events.last().map_or(0, |e| e.t) + 1000;
        let a = format!("{:?}", classify(&events, end));
        let b = format!("{:?}", classify(&events, end));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn one_outcome_per_press(p in press()) {
        let events = stream(&[p]);
        let out = classify(&events, 10_000);
        let decided = out.iter().filter(|g| !matches!(g, Gesture::Explore { .. })).count();
        prop_assert!(decided <= 1, "{:?}", out);
    }
}
