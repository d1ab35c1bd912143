from manetids.explainers.explainer import Explainer
from manetids.explainers.metric_text_explainer import MetricTextExplainer
from manetids.explainers.metric_json_explainer import MetricJSONExplainer
