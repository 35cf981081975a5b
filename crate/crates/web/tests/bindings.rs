use capelli_web::{centrality_text, column_capelli_text, quantum_immanant_text};

#[test]
fn schur_element_on_the_page() {
    assert_eq!(quantum_immanant_text("1", 2, true).unwrap(), "e[1,1] + e[2,2]");
    assert_eq!(quantum_immanant_text("1,1,1", 2, true).unwrap(), "0");
    assert!(quantum_immanant_text("2,x", 2, true).is_err());
    assert!(quantum_immanant_text("2,1", 9, true).is_err());
}

#[test]
fn column_capelli_on_the_page() {
    assert_eq!(column_capelli_text("1,2", "2,1", 2).unwrap(), "-e[1,2]e[2,1] + e[1,1]");
    assert!(column_capelli_text("1,2", "2", 2).is_err());
}

#[test]
fn centrality_on_the_page() {
    assert!(centrality_text("e[1,1] + e[2,2]", 2).unwrap().ends_with("\ncentral"));
    let out = centrality_text("e[2,1]e[1,2]", 2).unwrap();
    assert!(out.starts_with("e[1,2]e[2,1] - e[1,1] + e[2,2]\nnot central"), "{out}");
    assert!(centrality_text("e[1,", 2).is_err());
}
