//! Hyperflows on star graphs of small light-rooted hypermaps: existence
//! criterion, uniqueness of the minimal flow and the orientation correspondence.

use std::collections::BTreeMap;

use hypermap::flow::{
    check_existence_criterion, find_alpha_hyperflow, gamma, gamma_inverse, is_alpha_hyperflow,
    is_minimal, is_minimal_by_cycles, minimize_by_cycle_pushing, minimize_hyperflow, node_totals,
    star_graph, subset_balance, BipartiteGraph, Demand,
};
use hypermap::map::RootKind;
use hypermap::oracle::{enumerate_rooted_hypermaps, EnumerationSpec};
use hypermap::orientation::weight_report;
use hypermap::{HypermapError, Rational};

fn q(n: i128) -> Rational {
    Rational::from(n)
}

fn light_rooted(max_edges: usize) -> Vec<hypermap::RootedHypermap> {
    enumerate_rooted_hypermaps(&EnumerationSpec {
        max_edges,
        kinds: vec![RootKind::Light],
        corners: false,
    })
}

/// Every flow with values in `0..=top` on `n` edges.
fn all_flows(n: usize, top: i128) -> Vec<Vec<Rational>> {
    let base = (top + 1) as usize;
    (0..base.pow(n as u32))
        .map(|code| {
            (0..n)
                .map(|e| q((code / base.pow(e as u32) % base) as i128))
                .collect()
        })
        .collect()
}

#[test]
fn minimal_flow_is_unique_and_both_engines_agree() {
    let mut instances = 0;
    for r in light_rooted(4) {
        let star = star_graph(r.hypermap(), r.root_face().unwrap());
        let plane = &star.plane;
        let mut by_demand: BTreeMap<Vec<Rational>, Vec<Vec<Rational>>> = BTreeMap::new();
        for flow in all_flows(plane.graph.num_edges(), 2) {
            let t = node_totals(&plane.graph, &flow);
            by_demand
                .entry(t.x.iter().chain(&t.y).copied().collect())
                .or_default()
                .push(flow);
        }
        for flows in by_demand.values() {
            let minimal = minimize_hyperflow(plane, &flows[0]);
            assert!(is_minimal_by_cycles(plane, &minimal));
            assert!(is_minimal(plane, &minimal));
            let fixed_points = flows
                .iter()
                .filter(|f| is_minimal_by_cycles(plane, f))
                .count();
            let in_range = minimal.iter().all(|v| *v <= q(2));
            assert_eq!(fixed_points, usize::from(in_range));
            for flow in flows {
                assert_eq!(minimize_hyperflow(plane, flow), minimal);
                assert_eq!(minimize_by_cycle_pushing(plane, flow), minimal);
                assert_eq!(is_minimal(plane, flow), is_minimal_by_cycles(plane, flow));
                // An edge with the outer face on its right that carries flow
                // in some hyperflow carries flow in the minimal one.
                for (e, &(_, right)) in plane.sides.iter().enumerate() {
                    if right == plane.outer && flow[e] > q(0) {
                        assert!(minimal[e] > q(0));
                    }
                }
            }
            instances += 1;
        }
    }
    assert!(instances > 100);
}

#[test]
fn existence_criterion_agrees_with_flow_search() {
    let mut seen = [0usize; 2];
    for r in light_rooted(4) {
        let star = star_graph(r.hypermap(), r.root_face().unwrap());
        let g: &BipartiteGraph = star.graph();
        if g.num_x + g.num_y > 8 {
            continue;
        }
        let nodes = g.num_x + g.num_y;
        for code in 0..3usize.pow(nodes as u32) {
            let value = |i: usize| q((code / 3usize.pow(i as u32) % 3) as i128);
            let alpha = Demand {
                x: (0..g.num_x).map(value).collect(),
                y: (g.num_x..nodes).map(value).collect(),
            };
            let criterion = check_existence_criterion(g, &alpha);
            match find_alpha_hyperflow(g, &alpha) {
                Ok(flow) => {
                    assert!(is_alpha_hyperflow(g, &alpha, &flow));
                    assert!(criterion.is_ok());
                    seen[0] += 1;
                }
                Err(HypermapError::Infeasible { certificate }) => {
                    let witness = criterion.expect_err("criterion must fail");
                    let in_a: Vec<bool> = (0..g.num_x).map(|x| certificate.contains(&x)).collect();
                    let full = certificate.len() == g.num_x;
                    let balance = subset_balance(g, &alpha, &in_a);
                    assert!(balance < q(0) || (full && balance != q(0)));
                    let in_w: Vec<bool> = (0..g.num_x).map(|x| witness.contains(&x)).collect();
                    let wb = subset_balance(g, &alpha, &in_w);
                    assert!(wb < q(0) || (witness.len() == g.num_x && wb != q(0)));
                    seen[1] += 1;
                }
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn gamma_inverse_and_weights_of_flows() {
    for r in light_rooted(4) {
        let h = r.hypermap();
        let star = star_graph(h, r.root_face().unwrap());
        let g = star.graph();
        for code in 0..3usize.pow(g.num_edges() as u32) {
            let flow: Vec<Rational> = (0..g.num_edges())
                .map(|e| Rational::new((code / 3usize.pow(e as u32) % 3) as i128, 2))
                .collect();
            let o = gamma(h, &flow);
            assert_eq!(gamma_inverse(&o).unwrap(), flow);
            let report = weight_report(h, &o);
            let totals = node_totals(g, &flow);
            assert_eq!(report.vertex, totals.x);
            for (y, &f) in star.face_of_y.iter().enumerate() {
                assert_eq!(report.face[f], totals.y[y]);
            }
        }
    }
}
