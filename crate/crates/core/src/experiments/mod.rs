//! Cost-matched experiment harness: splits, budgets, tuning, studies and reports.

pub mod budget;
pub mod grid;
pub mod metrics;
pub mod report;
pub mod split;
pub mod study;
pub mod subset;

pub use budget::{allocation, budget_table, budget_table_csv, BudgetAllocation, Pairing, BUDGETS};
pub use grid::{FINAL_EPOCHS, TUNING_EPOCHS, grid_ledger_csv, grid_search, search, GridOutcome, GridPoint, GridRow, GridSpec, GridStage, TuneTask};
pub use metrics::{median, r2, rmse};
pub use report::{markdown_report, rmse_chart_svg, summarize, SummaryRow};
pub use split::{make_split, permutation, SplitKind, SplitPlan, SPLIT_TOTAL};
pub use study::{
    check_arity, indices_csv, parse_results_csv, results_csv, run_cost_study, IndexRecord, Role, RunResult, StudyData,
    StudyOutput, StudyPlan, StudySpec,
};
pub use subset::{dominant_inputs, input_subset, subset_columns, InputSubset};
