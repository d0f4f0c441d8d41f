def pipe_diameter(en, pipe_id):
    idx = en.getLinkIndex(pipe_id)
    return en.getLinkDiameter(idx)

result = pipe_diameter(en, "110")
