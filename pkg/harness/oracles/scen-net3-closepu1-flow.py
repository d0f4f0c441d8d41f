def max_flow(en, link_id):
    en.setLinkStatus(en.getLinkIndex("PU1"), 0)
    idx = en.getLinkIndex(link_id)
    res = en.getComputedHydraulicTimeSeries()
    return max(row[idx - 1] for row in res.Flow)

result = max_flow(en, "P1")
