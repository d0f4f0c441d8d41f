def node_max_age(en, node_id):
    idx = en.getNodeIndex(node_id)
    res = en.getComputedQualityTimeSeries()
    return max(row[idx - 1] for row in res.NodeQuality)

result = node_max_age(en, "J100")
