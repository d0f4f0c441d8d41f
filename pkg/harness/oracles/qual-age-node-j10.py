def node_age(en, node_id):
    idx = en.getNodeIndex(node_id)
    res = en.getComputedQualityTimeSeries()
    return res.NodeQuality[-1][idx - 1]

result = node_age(en, "J10")
