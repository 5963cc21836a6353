# Analysis package initialization
from analysis.posthoc_tests import dunn_holm, holm_adjust, kruskal_wallis, significance_stars
from analysis.result_analyzer import ResultAnalyzer, ResultTable, load_run_records
from analysis.table_writer import emit_table
