def pressure_stat(en):
    en.setLinkStatus(en.getLinkIndex("P7"), 0)
    res = en.getComputedHydraulicTimeSeries()
    vals = [v for row in res.Pressure for v in row]
    return sum(vals) / len(vals)

result = pressure_stat(en)
