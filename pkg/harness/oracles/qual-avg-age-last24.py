def water_age_stat(en):
    res = en.getComputedQualityTimeSeries()
    vals = [v for row in res.NodeQuality[-24:] for v in row]
    return sum(vals) / len(vals)

result = water_age_stat(en)
