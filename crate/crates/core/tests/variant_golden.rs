use hom_hnn::hnn::variant_experiment;
use hom_hnn::homalg::LeibnizVariant;

#[test]
fn leibniz_variant_experiment_matches_golden() {
    let exp = variant_experiment(2).unwrap();
    let golden = include_str!("golden/leibniz_variant.txt");
    assert_eq!(exp.render(), golden);
    assert_eq!(exp.selected, Some(LeibnizVariant::Mixed));
    assert_eq!(LeibnizVariant::default(), LeibnizVariant::Mixed);
}
