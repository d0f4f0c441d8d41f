def node_avg_age(en, node_id):
    idx = en.getNodeIndex(node_id)
    res = en.getComputedQualityTimeSeries()
    vals = [row[idx - 1] for row in res.NodeQuality]
    return sum(vals) / len(vals)

result = node_avg_age(en, "J5")
