use crate::datasets::table::{FeatureKind, LabeledTable};

const ROWS: [[&str; 5]; 14] = [
    ["Sunny", "Hot", "High", "False", "No"],
    ["Sunny", "Hot", "High", "True", "No"],
    ["Overcast", "Hot", "High", "False", "Yes"],
    ["Rainy", "Mild", "High", "False", "Yes"],
    ["Rainy", "Cool", "Normal", "False", "Yes"],
    ["Rainy", "Cool", "Normal", "True", "No"],
    ["Overcast", "Cool", "Normal", "True", "Yes"],
    ["Sunny", "Mild", "High", "False", "No"],
    ["Sunny", "Cool", "Normal", "False", "Yes"],
    ["Rainy", "Mild", "Normal", "False", "Yes"],
    ["Sunny", "Mild", "Normal", "True", "Yes"],
    ["Overcast", "Mild", "High", "True", "Yes"],
    ["Overcast", "Hot", "Normal", "False", "Yes"],
    ["Rainy", "Mild", "High", "True", "No"],
];

/// The 14-row Weather (Play) table. Row `k` of the table is the example with
/// id `k + 1`.
pub fn weather_fixture() -> LabeledTable {
    let names = ["Outlook", "Temperature", "Humidity", "Windy"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let cells = ROWS
        .iter()
        .map(|r| r[..4].iter().map(|s| s.to_string()).collect())
        .collect();
    let labels = ROWS.iter().map(|r| r[4].to_string()).collect();
    LabeledTable::from_strings(names, Some(vec![FeatureKind::Categorical; 4]), cells, labels)
        .expect("weather fixture is well formed")
}
