def max_flow(en, link_id):
    idx = en.getLinkIndex(link_id)
    res = en.getComputedHydraulicTimeSeries()
    return max(row[idx - 1] for row in res.Flow)

result = max_flow(en, "P5")
