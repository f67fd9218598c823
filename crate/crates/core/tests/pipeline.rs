use lingrowth::constructions::{subdivide_in_host, HostEmbedding, DEFAULT_SUBDIVISION_BUDGET};
use lingrowth::decomposition::{build_tree_decomposition, check_tree_decomposition, TreeDecomposition};
use lingrowth::generators::{generate, random_cubic, strong_product, Family};
use lingrowth::graph::{parse_edge_list, serialize_edge_list};
use lingrowth::growth::{growth_constant, verify_growth_bound};
use lingrowth::ratio;
use lingrowth::stack::{check_stack_layout, layout_from_decomposition, StackLayout};
use lingrowth::Error;

#[test]
fn edge_list_decomposition_layout_round_trip() {
    let g = strong_product(&generate(Family::Path, 6).unwrap(), &generate(Family::Cycle, 5).unwrap()).unwrap();
    let g = parse_edge_list(&serialize_edge_list(&g)).unwrap();
    let c = growth_constant(&g).unwrap();
    let td = build_tree_decomposition(&g, &c).unwrap();
    let td = TreeDecomposition::from_json(&td.to_json()).unwrap();
    assert!(check_tree_decomposition(&g, &td).valid);
    assert!(num_bigint::BigInt::from(td.width()) <= ratio::treewidth_bound(&c));
    let layout = layout_from_decomposition(&g, &td).unwrap();
    let layout = StackLayout::from_json(&layout.to_json()).unwrap();
    let verdict = check_stack_layout(&g, &layout).unwrap();
    assert!(verdict.valid);
    assert!(num_bigint::BigInt::from(verdict.k) <= ratio::stack_bound(&c));
}

#[test]
fn cubic_graph_decomposes() {
    let g = random_cubic(40, 9).unwrap();
    let c = growth_constant(&g).unwrap();
    let td = build_tree_decomposition(&g, &c).unwrap();
    assert!(check_tree_decomposition(&g, &td).valid);
}

#[test]
fn tree_host_subdivision_certificate_holds() {
    let t = generate(Family::CompleteBinaryTree, 10).unwrap();
    let emb = HostEmbedding::from_json(&HostEmbedding::tree_identity(&t, 0).to_json()).unwrap();
    let rec = subdivide_in_host(&t, &emb, &ratio::int(2), DEFAULT_SUBDIVISION_BUDGET).unwrap();
    assert!(verify_growth_bound(&rec.result, &rec.host_bound().unwrap()).unwrap().holds());
}

#[test]
fn malformed_inputs_are_errors() {
    assert!(matches!(parse_edge_list("p 3 1\n0 7\n"), Err(Error::Parse { .. }) | Err(Error::Range { .. })));
    assert!(TreeDecomposition::from_json("{\"nodes\": 3}").is_err());
    assert!(StackLayout::from_json("[]").is_err());
}
